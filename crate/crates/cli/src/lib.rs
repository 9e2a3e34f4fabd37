//! Command-line front end for `prigid`: subcommand dispatch, JSON reports,
//! report re-verification and the acceptance suite.

pub mod accept;
pub mod cli;
pub mod commands;
pub mod notes;
pub mod report;
pub mod reverify;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Exit code for an error that stopped a command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use prigid::Error as E;
    match err.chain().find_map(|e| e.downcast_ref::<E>()) {
        Some(E::ResourceBound { .. } | E::Precision(_)) => EXIT_RESOURCE,
        Some(E::Verification(_)) => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}
