//! Exact-rational certification of the density upper bounds and analyzers
//! for the counting inequalities behind them. No floating point anywhere
//! in this module.

mod audit;
mod lp;

pub use audit::{
    audit_five_three, audit_injection, audit_six_four, classify_triples, AuditError,
    FiveThreeAudit, InjectionAudit, SixFourAudit, TripleClassification,
};
pub use lp::{parse_rational, rat, solve_lp, LpCertificate, LpError, Rat, RationalLP};

use num::{BigInt, BigRational, Signed, Zero};

/// The two-variable program behind the n^2/5 bound:
/// maximize x + 2y subject to x >= 4y, x + y <= b, x, y >= 0.
pub fn five_three_program(b: &Rat) -> RationalLP {
    RationalLP {
        vars: vec!["x".into(), "y".into()],
        objective: vec![rat(1, 1), rat(2, 1)],
        constraints: vec![
            (vec![rat(-1, 1), rat(4, 1)], Rat::zero()), // x >= 4y
            (vec![rat(1, 1), rat(1, 1)], b.clone()),    // x + y <= b
        ],
        nonneg: vec![true, true],
    }
}

/// Solves the x + 2y program; the optimum is exactly 6b/5, attained at
/// (4b/5, b/5).
pub fn lp_five_three(b: &Rat) -> Result<LpCertificate, LpError> {
    if b.is_negative() {
        return Err(LpError::BadInput("b must be nonnegative".into()));
    }
    let cert = solve_lp(&five_three_program(b))?;
    debug_assert_eq!(cert.value, rat(6, 5) * b);
    Ok(cert)
}

/// The three-variable program behind the 3/14 bound for (6,4):
/// maximize (e1 + 2 e2 + 3 e3)/3 subject to e1 + e2 + e3 <= 1/2,
/// -8 e1/3 + 20 e2/3 + 16 e3 <= 0, all variables nonnegative.
pub fn six_four_program() -> RationalLP {
    RationalLP {
        vars: vec!["e1".into(), "e2".into(), "e3".into()],
        objective: vec![rat(1, 3), rat(2, 3), rat(1, 1)],
        constraints: vec![
            (vec![rat(1, 1), rat(1, 1), rat(1, 1)], rat(1, 2)),
            (vec![rat(-8, 3), rat(20, 3), rat(16, 1)], Rat::zero()),
        ],
        nonneg: vec![true, true, true],
    }
}

/// Solves the (6,4) density program; the optimum is exactly 3/14.
pub fn lp_six_four() -> Result<LpCertificate, LpError> {
    let cert = solve_lp(&six_four_program())?;
    debug_assert_eq!(cert.value, rat(3, 14));
    Ok(cert)
}

/// The degree-averaging upper bound for (k, k-2) together with the weaker
/// codegree cap, both exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AveragingBound {
    /// (k-3) n (n-1) / (3 (k-2))
    pub bound: Rat,
    /// (k-3) C(n,2) / 3
    pub trivial_cap: Rat,
}

pub fn averaging_bound(n: u32, k: u32) -> Result<AveragingBound, LpError> {
    if k < 4 {
        return Err(LpError::BadInput(format!("k must be >= 4, got {k}")));
    }
    let n = BigRational::from(BigInt::from(n));
    let k3 = BigRational::from(BigInt::from(k as i64 - 3));
    let k2 = BigRational::from(BigInt::from(k as i64 - 2));
    let nn1 = &n * (&n - BigRational::from(BigInt::from(1)));
    Ok(AveragingBound {
        bound: &k3 * &nn1 / (rat(3, 1) * k2),
        trivial_cap: &k3 * &nn1 / rat(6, 1),
    })
}

/// The best analytic edge-count cap known here for an F(k,s)-free system
/// on n vertices, when one applies.
pub fn upper_cap(n: u32, k: u32, s: u32) -> Option<Rat> {
    let mut caps: Vec<Rat> = Vec::new();
    let nr = BigRational::from(BigInt::from(n));
    if (k, s) == (5, 3) {
        caps.push(&nr * (&nr - BigRational::from(BigInt::from(1))) / rat(5, 1));
    }
    if (k, s) == (6, 4) {
        caps.push(rat(3, 14) * &nr * &nr);
    }
    if k >= 4 && s == k - 2 {
        if let Ok(a) = averaging_bound(n, k) {
            caps.push(a.bound);
        }
    }
    caps.into_iter().min()
}

/// `upper_cap` floored to an integer edge count.
pub fn upper_cap_edges(n: u32, k: u32, s: u32) -> Option<u64> {
    upper_cap(n, k, s).map(|r| {
        let f = r.floor().to_integer();
        u64::try_from(f).unwrap_or(u64::MAX)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_three_value_and_primal() {
        let one = rat(1, 1);
        let cert = lp_five_three(&one).unwrap();
        assert_eq!(cert.value, rat(6, 5));
        assert_eq!(cert.primal, vec![rat(4, 5), rat(1, 5)]);
        assert!(cert.verify(&five_three_program(&one)));
    }

    #[test]
    fn five_three_degenerate_and_scaled() {
        let cert0 = lp_five_three(&rat(0, 1)).unwrap();
        assert_eq!(cert0.value, rat(0, 1));
        assert_eq!(cert0.primal, vec![rat(0, 1), rat(0, 1)]);

        let cert5 = lp_five_three(&rat(5, 1)).unwrap();
        assert_eq!(cert5.value, rat(6, 1));
        assert_eq!(cert5.primal, vec![rat(4, 1), rat(1, 1)]);

        assert!(lp_five_three(&rat(-1, 1)).is_err());
    }

    #[test]
    fn five_three_homogeneous() {
        for (num, den) in [(1i64, 2i64), (3, 7), (10, 1)] {
            let b = rat(num, den);
            let cert = lp_five_three(&b).unwrap();
            assert_eq!(cert.value, rat(6, 5) * &b);
        }
    }

    #[test]
    fn six_four_value() {
        let cert = lp_six_four().unwrap();
        assert_eq!(cert.value, rat(3, 14));
        assert!(cert.verify(&six_four_program()));
    }

    #[test]
    fn six_four_optimum_sits_on_both_constraints() {
        // independent route: at an optimal vertex both constraints hold with
        // equality; substitute and check by hand-evaluated dot products
        let cert = lp_six_four().unwrap();
        let p = &cert.primal;
        let sum: Rat = p.iter().cloned().sum();
        assert_eq!(sum, rat(1, 2));
        let second = rat(-8, 3) * &p[0] + rat(20, 3) * &p[1] + rat(16, 1) * &p[2];
        assert_eq!(second, rat(0, 1));
        let objective = (p[0].clone() + rat(2, 1) * &p[1] + rat(3, 1) * &p[2]) / rat(3, 1);
        assert_eq!(objective, rat(3, 14));
    }

    #[test]
    fn six_four_without_second_constraint_caps_at_half() {
        let mut lp = six_four_program();
        lp.constraints.truncate(1);
        let cert = solve_lp(&lp).unwrap();
        assert_eq!(cert.value, rat(1, 2));
    }

    #[test]
    fn generic_engine_reproduces_fixed_programs() {
        let one = rat(1, 1);
        assert_eq!(solve_lp(&five_three_program(&one)).unwrap(), lp_five_three(&one).unwrap());
        assert_eq!(solve_lp(&six_four_program()).unwrap(), lp_six_four().unwrap());
    }

    #[test]
    fn averaging_values() {
        let a = averaging_bound(10, 5).unwrap();
        assert_eq!(a.bound, rat(20, 1));
        assert_eq!(a.trivial_cap, rat(30, 1));

        let a4 = averaging_bound(10, 4).unwrap();
        assert_eq!(a4.bound, rat(15, 1));
        assert_eq!(a4.trivial_cap, rat(15, 1)); // the two caps coincide at k = 4

        let a6 = averaging_bound(10, 6).unwrap();
        assert_eq!(a6.bound, rat(45, 2));

        assert!(averaging_bound(10, 3).is_err());
    }

    #[test]
    fn caps_for_known_families() {
        assert_eq!(upper_cap_edges(7, 4, 2), Some(7)); // C(7,2)/3
        assert_eq!(upper_cap_edges(5, 5, 3), Some(4)); // 5*4/5
        assert_eq!(upper_cap_edges(7, 5, 3), Some(8)); // 42/5
        assert_eq!(upper_cap_edges(7, 6, 4), Some(10)); // min(3*49/14, 7*6/4)
        assert_eq!(upper_cap_edges(6, 6, 4), Some(7)); // averaging 30/4 beats 108/14
        assert_eq!(upper_cap_edges(9, 7, 4), None);
    }
}
