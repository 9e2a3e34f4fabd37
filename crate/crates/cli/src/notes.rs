use prigid::pgroup::{RootDepth, ThetaAbelianSpec, TowerGroupRecord};

use crate::report::Note;

/// `|D_n / D_{n+1}|` at `p`-power indices `n`, stated as `p^{|I|}` and
/// computed in the affine model, where `σ` contributes one more factor.
pub fn dimension_quotient(p: u64, rho_count: usize, d: u32, quotient_orders: &[u64]) -> Option<Note> {
    let stated = p.pow(rho_count as u32);
    let mut n = p as usize;
    while n < quotient_orders.len() {
        let computed = quotient_orders[n - 1];
        if computed != stated {
            return Some(Note::warn(
                "dimension subgroup quotient rank",
                &format!("|D_{n}/D_{}| = p^|I| = {stated}", n + 1),
                &format!("|D_{n}/D_{}| = {computed} (d(G) = {d})", n + 1),
                "stated rank of D_n/D_{n+1} for n a power of p",
                "closure of the dimension-series product in the affine model",
            ));
        }
        n *= p as usize;
    }
    None
}

/// First level where the rule `n <= p^k + 1` mispredicts abelianness.
pub fn tower_abelian_rule(spec: &ThetaAbelianSpec, levels: &[TowerGroupRecord]) -> Option<Note> {
    let RootDepth::Finite(k) = spec.k else { return None };
    let bad = levels.iter().find(|l| l.predicted_abelian_p_power_rule.is_some_and(|x| x != l.is_abelian))?;
    let k_rule_holds = levels.iter().all(|l| l.predicted_abelian_k_rule == Some(l.is_abelian));
    Some(Note::warn(
        "abelian range of tower Galois groups",
        &format!("abelian for n <= p^k + 1 = {}", spec.p.pow(k) + 1),
        &format!(
            "abelian for n <= k + 1 = {}; level n = {} is {} (k + 1 rule {} on levels 1..={})",
            k + 1,
            bad.n,
            if bad.is_abelian { "abelian" } else { "non-abelian" },
            if k_rule_holds { "holds" } else { "fails" },
            levels.len()
        ),
        "stated exponent bound for abelian tower levels",
        "exhaustive commutation in the affine model of each level",
    ))
}
