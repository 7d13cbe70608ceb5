//! Analyzers for the counting inequalities used in the upper-bound proofs.
//!
//! Every audit first re-verifies its freeness precondition through the
//! checker; reports are exact integer/rational statements, never floats.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::checker::{is_free, CheckerError, ForbiddenFamily};
use crate::system::{codegree_classes, ConfigWitness, Pair, Triple, TripleSystem};

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("input is not ({k},{s})-free: witness with {} edges on {} vertices", .witness.edge_count(), .witness.k_spanned())]
    NotFree { k: u32, s: u32, witness: ConfigWitness },
    #[error(transparent)]
    Checker(#[from] CheckerError),
}

/// Triples bucketed by their sorted codegree pattern, following the roles
/// they play in the (6,4) double count.
#[derive(Debug, Clone, Serialize)]
pub struct TripleClassification {
    /// Pattern (3,1,1).
    pub t1: Vec<Triple>,
    /// Pattern (2,2,1).
    pub t2: Vec<Triple>,
    pub remainder: Vec<Triple>,
    /// d(xy)+d(xz)+d(yz) per edge, aligned with the system's edge order.
    pub codegree_sums: Vec<u32>,
    /// Number of codegree-3 pairs, for the |T1| = 3 e(G3) identity.
    pub e_g3: u64,
}

pub fn classify_triples(g: &TripleSystem) -> TripleClassification {
    let classes = codegree_classes(g);
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut remainder = Vec::new();
    let mut codegree_sums = Vec::with_capacity(g.edge_count());
    for &t in g.edges() {
        let mut ds = [
            classes.codegree(t[0], t[1]),
            classes.codegree(t[0], t[2]),
            classes.codegree(t[1], t[2]),
        ];
        codegree_sums.push(ds.iter().sum());
        ds.sort_unstable_by(|a, b| b.cmp(a));
        match ds {
            [3, 1, 1] => t1.push(t),
            [2, 2, 1] => t2.push(t),
            _ => remainder.push(t),
        }
    }
    TripleClassification {
        t1,
        t2,
        remainder,
        codegree_sums,
        e_g3: classes.class_count(3),
    }
}

fn require_free(g: &TripleSystem, members: &[(u32, u32)]) -> Result<(), AuditError> {
    let fam = ForbiddenFamily::new(members.iter().copied()).map_err(AuditError::Checker)?;
    if let Some(witness) = is_free(g, &fam)? {
        let (k, s) = members
            .iter()
            .copied()
            .find(|&(_, s)| s as usize == witness.edge_count())
            .unwrap_or(members[0]);
        return Err(AuditError::NotFree { k, s, witness });
    }
    Ok(())
}

/// Report for the counting argument behind e(G) <= n(n-1)/5 on
/// (5,3)-free systems.
#[derive(Debug, Clone, Serialize)]
pub struct FiveThreeAudit {
    pub n: u32,
    pub edges: u64,
    pub e_g1: u64,
    pub e_g2: u64,
    /// 3 e(G) == e(G1) + 2 e(G2)
    pub handshake_ok: bool,
    /// e(G1) >= 4 e(G2)
    pub ratio_ok: bool,
    /// 5 e(G) <= n (n-1)
    pub cap_ok: bool,
    pub pass: bool,
}

pub fn audit_five_three(g: &TripleSystem) -> Result<FiveThreeAudit, AuditError> {
    require_free(g, &[(5, 3)])?;
    let classes = codegree_classes(g);
    let edges = g.edge_count() as u64;
    let e_g1 = classes.class_count(1);
    let e_g2 = classes.class_count(2);
    let handshake_ok = 3 * edges == e_g1 + 2 * e_g2;
    let ratio_ok = e_g1 >= 4 * e_g2;
    let cap_ok = 5 * edges <= g.n() as u64 * (g.n() as u64 - 1);
    Ok(FiveThreeAudit {
        n: g.n(),
        edges,
        e_g1,
        e_g2,
        handshake_ok,
        ratio_ok,
        cap_ok,
        pass: handshake_ok && ratio_ok && cap_ok,
    })
}

/// Report for the disjoint witness-set argument behind e(G) <= 3n^2/14 on
/// systems free of both (6,4) and (4,3).
#[derive(Debug, Clone, Serialize)]
pub struct SixFourAudit {
    pub n: u32,
    pub edges: u64,
    pub e_g1: u64,
    pub e_g2: u64,
    pub e_g3: u64,
    pub t1_count: u64,
    pub t2_count: u64,
    /// |T1| == 3 e(G3)
    pub t1_identity_ok: bool,
    /// codegree sums are exactly 5 on T1 u T2 and at most 4 elsewhere
    pub sums_ok: bool,
    /// every witness pair lies in G1
    pub membership_ok: bool,
    /// all witness sets are pairwise disjoint
    pub disjoint_ok: bool,
    /// e(G1) >= 6 e(G3) + 5 |T2|
    pub inequality_ok: bool,
    /// 14 e(G) <= 3 n^2
    pub cap_ok: bool,
    pub pass: bool,
}

pub fn audit_six_four(g: &TripleSystem) -> Result<SixFourAudit, AuditError> {
    require_free(g, &[(6, 4), (4, 3)])?;
    let classes = codegree_classes(g);
    let cls = classify_triples(g);

    // pair -> edges through it
    let mut by_pair: HashMap<Pair, Vec<Triple>> = HashMap::new();
    for &t in g.edges() {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            by_pair.entry((a, b)).or_default().push(t);
        }
    }

    let mut membership_ok = true;
    let mut disjoint_ok = true;
    let mut seen: HashSet<Pair> = HashSet::new();
    let mut record = |pairs: &[Pair], membership_ok: &mut bool, disjoint_ok: &mut bool| {
        for &p in pairs {
            if classes.codegree(p.0, p.1) != 1 {
                *membership_ok = false;
            }
            if !seen.insert(p) {
                *disjoint_ok = false;
            }
        }
    };

    // E_xy for codegree-3 pairs: the six pairs from x and y to the three
    // third vertices
    for (x, y) in classes.pairs_with_codegree(3) {
        let thirds: Vec<u32> = by_pair[&(x, y)]
            .iter()
            .map(|t| third_vertex(t, x, y))
            .collect();
        let mut pairs = Vec::with_capacity(6);
        for &z in &thirds {
            pairs.push(ordered(x, z));
            pairs.push(ordered(y, z));
        }
        record(&pairs, &mut membership_ok, &mut disjoint_ok);
    }

    // E_xyz for T2 triples: with d(xy) = d(xz) = 2 and d(yz) = 1, take the
    // companion triples xyw1 and xzw2
    for t in &cls.t2 {
        let (x, y, z) = t2_roles(t, &classes);
        let w1 = companion_third(&by_pair, x, y, t);
        let w2 = companion_third(&by_pair, x, z, t);
        let pairs = [
            ordered(x, w1),
            ordered(y, w1),
            ordered(x, w2),
            ordered(z, w2),
            ordered(y, z),
        ];
        record(&pairs, &mut membership_ok, &mut disjoint_ok);
    }

    let edges = g.edge_count() as u64;
    let e_g1 = classes.class_count(1);
    let e_g2 = classes.class_count(2);
    let e_g3 = classes.class_count(3);
    let t1_count = cls.t1.len() as u64;
    let t2_count = cls.t2.len() as u64;
    let t1_identity_ok = t1_count == 3 * e_g3;
    let sums_ok = g.edges().iter().zip(&cls.codegree_sums).all(|(t, &sum)| {
        let in_t1_t2 = cls.t1.contains(t) || cls.t2.contains(t);
        if in_t1_t2 {
            sum == 5
        } else {
            sum <= 4
        }
    });
    let inequality_ok = e_g1 >= 6 * e_g3 + 5 * t2_count;
    let cap_ok = 14 * edges <= 3 * g.n() as u64 * g.n() as u64;
    let pass = t1_identity_ok && sums_ok && membership_ok && disjoint_ok && inequality_ok && cap_ok;
    Ok(SixFourAudit {
        n: g.n(),
        edges,
        e_g1,
        e_g2,
        e_g3,
        t1_count,
        t2_count,
        t1_identity_ok,
        sums_ok,
        membership_ok,
        disjoint_ok,
        inequality_ok,
        cap_ok,
        pass,
    })
}

/// Report for the pairing of codegree-2 pairs with codegree-0 pairs on
/// systems free of both (5,3) and (6,4), which forces e(G) <= C(n,2)/3.
#[derive(Debug, Clone, Serialize)]
pub struct InjectionAudit {
    pub n: u32,
    pub edges: u64,
    pub e_g0: u64,
    pub e_g2: u64,
    /// every image pair z z' has codegree 0
    pub into_g0_ok: bool,
    /// no two codegree-2 pairs share an image
    pub injective_ok: bool,
    /// 3 e(G) <= C(n,2)
    pub count_ok: bool,
    pub pass: bool,
}

pub fn audit_injection(g: &TripleSystem) -> Result<InjectionAudit, AuditError> {
    require_free(g, &[(5, 3), (6, 4)])?;
    let classes = codegree_classes(g);

    let mut by_pair: HashMap<Pair, Vec<Triple>> = HashMap::new();
    for &t in g.edges() {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            by_pair.entry((a, b)).or_default().push(t);
        }
    }

    let mut into_g0_ok = true;
    let mut injective_ok = true;
    let mut image: HashMap<Pair, Pair> = HashMap::new();
    for (x, y) in classes.pairs_with_codegree(2) {
        let ts = &by_pair[&(x, y)];
        debug_assert_eq!(ts.len(), 2);
        let z = third_vertex(&ts[0], x, y);
        let zp = third_vertex(&ts[1], x, y);
        let img = ordered(z, zp);
        if classes.codegree(img.0, img.1) != 0 {
            into_g0_ok = false;
        }
        if image.insert(img, (x, y)).is_some() {
            injective_ok = false;
        }
    }

    let edges = g.edge_count() as u64;
    let count_ok = 3 * edges <= g.pair_count();
    let pass = into_g0_ok && injective_ok && count_ok;
    Ok(InjectionAudit {
        n: g.n(),
        edges,
        e_g0: classes.class_count(0),
        e_g2: classes.class_count(2),
        into_g0_ok,
        injective_ok,
        count_ok,
        pass,
    })
}

fn ordered(a: u32, b: u32) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn third_vertex(t: &Triple, x: u32, y: u32) -> u32 {
    *t.iter().find(|&&v| v != x && v != y).expect("triple has a third vertex")
}

/// The vertex of a (2,2,1) triple sitting in both codegree-2 pairs, then
/// the codegree-2 partners y, z.
fn t2_roles(t: &Triple, classes: &crate::system::CodegreeClasses) -> (u32, u32, u32) {
    let d01 = classes.codegree(t[0], t[1]);
    let d02 = classes.codegree(t[0], t[2]);
    if d01 == 2 && d02 == 2 {
        (t[0], t[1], t[2])
    } else if d01 == 2 {
        // d12 == 2
        (t[1], t[0], t[2])
    } else {
        // d02 == d12 == 2
        (t[2], t[0], t[1])
    }
}

/// The third vertex of the other triple through the pair (x, y).
fn companion_third(by_pair: &HashMap<Pair, Vec<Triple>>, x: u32, y: u32, not: &Triple) -> u32 {
    let ts = &by_pair[&ordered(x, y)];
    let other = ts.iter().find(|t| *t != not).expect("codegree 2 pair has a companion");
    third_vertex(other, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{fano, greedy_pack, lift};

    fn sys(n: u32, ts: &[[u32; 3]]) -> TripleSystem {
        TripleSystem::new(n, ts.iter().copied()).unwrap()
    }

    #[test]
    fn classify_fano_all_linear() {
        let c = classify_triples(&fano());
        assert!(c.t1.is_empty());
        assert!(c.t2.is_empty());
        assert_eq!(c.remainder.len(), 7);
        assert!(c.codegree_sums.iter().all(|&s| s == 3));
    }

    #[test]
    fn classify_lifted_page() {
        let g = sys(4, &[[0, 2, 3], [1, 2, 3]]);
        let c = classify_triples(&g);
        assert!(c.t1.is_empty() && c.t2.is_empty());
        assert_eq!(c.remainder.len(), 2);
        assert_eq!(c.codegree_sums, vec![4, 4]);
    }

    #[test]
    fn classify_codegree_three_book() {
        let g = sys(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        let c = classify_triples(&g);
        assert_eq!(c.t1.len(), 3);
        assert_eq!(c.e_g3, 1);
        assert_eq!(c.t1.len() as u64, 3 * c.e_g3);
        assert!(c.t2.is_empty());
        assert!(c.remainder.is_empty());
        assert_eq!(c.codegree_sums, vec![5, 5, 5]);
    }

    #[test]
    fn five_three_audit_on_page() {
        let g = sys(4, &[[0, 2, 3], [1, 2, 3]]);
        let a = audit_five_three(&g).unwrap();
        assert_eq!(a.e_g1, 4);
        assert_eq!(a.e_g2, 1);
        assert!(a.pass);
        // the ratio bound is tight here: 4 >= 4*1
        assert_eq!(a.e_g1, 4 * a.e_g2);
    }

    #[test]
    fn five_three_audit_on_fano() {
        let a = audit_five_three(&fano()).unwrap();
        assert_eq!(a.e_g1, 21);
        assert_eq!(a.e_g2, 0);
        assert!(a.handshake_ok); // 3*7 == 21
        assert!(a.pass);
    }

    #[test]
    fn five_three_audit_rejects_unfree_input() {
        let g = sys(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        assert!(matches!(
            audit_five_three(&g),
            Err(AuditError::NotFree { k: 5, s: 3, .. })
        ));
    }

    #[test]
    fn five_three_audit_on_construction_output() {
        let g = lift(&greedy_pack(60, 2, 3, 2000).unwrap());
        let a = audit_five_three(&g).unwrap();
        assert!(a.pass, "{a:?}");
    }

    #[test]
    fn six_four_audit_on_fano() {
        let a = audit_six_four(&fano()).unwrap();
        assert_eq!(a.e_g3, 0);
        assert_eq!(a.t2_count, 0);
        assert!(a.pass);
    }

    #[test]
    fn six_four_audit_tight_book() {
        // one codegree-3 pair on n = 5: E_{01} has six pairs, all codegree 1
        let g = sys(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        let a = audit_six_four(&g).unwrap();
        assert_eq!(a.e_g3, 1);
        assert_eq!(a.t1_count, 3);
        assert_eq!(a.e_g1, 6);
        assert!(a.inequality_ok); // 6 >= 6*1 + 0, tight
        assert!(a.pass, "{a:?}");
    }

    #[test]
    fn six_four_audit_with_t2_triples() {
        // 012 has d(01)=2, d(02)=2, d(12)=1: a T2 triple with w1 = 3, w2 = 4
        let g = sys(7, &[[0, 1, 2], [0, 1, 3], [0, 2, 4]]);
        let c = classify_triples(&g);
        assert_eq!(c.t2, vec![[0, 1, 2]]);
        let a = audit_six_four(&g).unwrap();
        assert_eq!(a.t2_count, 1);
        assert!(a.membership_ok);
        assert!(a.disjoint_ok);
        assert!(a.inequality_ok); // e_g1 = 7 >= 6*0 + 5*1
        assert!(a.pass, "{a:?}");
    }

    #[test]
    fn six_four_audit_rejects_unfree_input() {
        // four triples through one pair violate (6,4)
        let g = sys(6, &[[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 1, 5]]);
        assert!(matches!(audit_six_four(&g), Err(AuditError::NotFree { .. })));
        // a (4,3) configuration alone must also be rejected
        let g2 = sys(6, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]);
        assert!(matches!(
            audit_six_four(&g2),
            Err(AuditError::NotFree { k: 4, s: 3, .. })
        ));
    }

    #[test]
    fn injection_audit_single_pair() {
        let g = sys(5, &[[0, 1, 2], [0, 1, 3]]);
        let a = audit_injection(&g).unwrap();
        assert_eq!(a.e_g2, 1);
        assert!(a.into_g0_ok); // phi({0,1}) = {2,3} has codegree 0
        assert!(a.injective_ok);
        assert!(a.count_ok); // 6 <= 10
        assert!(a.pass);
    }

    #[test]
    fn injection_audit_fano_vacuous() {
        let a = audit_injection(&fano()).unwrap();
        assert_eq!(a.e_g2, 0);
        assert!(a.pass);
    }

    #[test]
    fn injection_audit_rejects_unfree_input() {
        let g = sys(6, &[[0, 2, 3], [1, 2, 3], [0, 4, 5], [1, 4, 5]]);
        assert!(matches!(
            audit_injection(&g),
            Err(AuditError::NotFree { k: 6, s: 4, .. })
        ));
    }
}
