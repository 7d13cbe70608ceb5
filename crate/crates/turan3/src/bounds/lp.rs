//! Exact linear programming over rationals by vertex enumeration.
//!
//! Programs here have at most a handful of variables, so enumerating the
//! intersections of all constraint subsets is trivially correct and avoids
//! pivoting edge cases entirely. Every solve returns a primal optimum and
//! a nonnegative dual vector whose combination of constraint rows dominates
//! the objective and reproduces the optimal value exactly.

use itertools::Itertools;
use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p", "p/q" or a plain integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: BigInt = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(p, q))
}

/// A maximization program with exact rational data: maximize c·x subject
/// to row·x <= rhs for every constraint and x_j >= 0 where flagged.
#[derive(Debug, Clone)]
pub struct RationalLP {
    pub vars: Vec<String>,
    pub objective: Vec<Rat>,
    /// (coefficient row, right-hand side), meaning row · x <= rhs.
    pub constraints: Vec<(Vec<Rat>, Rat)>,
    pub nonneg: Vec<bool>,
}

/// A solved program: optimal value, a primal optimum, and one dual
/// multiplier per constraint row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCertificate {
    pub value: Rat,
    pub primal: Vec<Rat>,
    pub dual: Vec<Rat>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("program is infeasible")]
    Infeasible,
    #[error("program is unbounded")]
    Unbounded,
    #[error("bad program: {0}")]
    BadInput(String),
    #[error("internal solver failure: {0}")]
    Internal(String),
}

impl LpCertificate {
    /// Exact recomputation of everything the certificate claims:
    /// primal feasibility, objective match, dual nonnegativity, dual
    /// domination of the objective, and the weak-duality identity.
    pub fn verify(&self, lp: &RationalLP) -> bool {
        let d = lp.vars.len();
        if self.primal.len() != d || self.dual.len() != lp.constraints.len() {
            return false;
        }
        // primal feasibility
        for (j, x) in self.primal.iter().enumerate() {
            if lp.nonneg[j] && x.is_negative() {
                return false;
            }
        }
        for (row, rhs) in &lp.constraints {
            if dot(row, &self.primal) > *rhs {
                return false;
            }
        }
        // objective value
        if dot(&lp.objective, &self.primal) != self.value {
            return false;
        }
        // dual nonnegativity and domination: sum_i y_i row_i >= c
        // componentwise (equality on free variables)
        if self.dual.iter().any(|y| y.is_negative()) {
            return false;
        }
        for j in 0..d {
            let combo: Rat = lp
                .constraints
                .iter()
                .zip(&self.dual)
                .map(|((row, _), y)| &row[j] * y)
                .sum();
            if lp.nonneg[j] {
                if combo < lp.objective[j] {
                    return false;
                }
            } else if combo != lp.objective[j] {
                return false;
            }
        }
        // dual value equals primal value
        let dual_value: Rat = lp
            .constraints
            .iter()
            .zip(&self.dual)
            .map(|((_, rhs), y)| rhs * y)
            .sum();
        dual_value == self.value
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves a square rational system by Gaussian elimination; `None` when
/// the matrix is singular.
fn solve_square(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let d = b.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        b[col] /= &p;
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c2 in 0..d {
                    let v = &a[col][c2] * &f;
                    a[r][c2] -= v;
                }
                let v = &b[col] * &f;
                b[r] -= v;
            }
        }
    }
    Some(b)
}

/// After splitting free variables, every column is nonnegative; rows hold
/// the original constraints followed by -x_j <= 0 for every column.
struct SplitProgram {
    cols: usize,
    c: Vec<Rat>,
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    m_original: usize,
    /// column -> (original var, sign)
    col_map: Vec<(usize, i32)>,
}

fn split(lp: &RationalLP) -> Result<SplitProgram, LpError> {
    let d = lp.vars.len();
    if lp.objective.len() != d || lp.nonneg.len() != d {
        return Err(LpError::BadInput("dimension mismatch".into()));
    }
    for (row, _) in &lp.constraints {
        if row.len() != d {
            return Err(LpError::BadInput("constraint row dimension mismatch".into()));
        }
    }
    let mut col_map = Vec::new();
    for (j, &nn) in lp.nonneg.iter().enumerate() {
        col_map.push((j, 1));
        if !nn {
            col_map.push((j, -1));
        }
    }
    let cols = col_map.len();
    if cols == 0 {
        return Err(LpError::BadInput("program has no variables".into()));
    }
    if cols > 10 || lp.constraints.len() > 24 {
        return Err(LpError::BadInput(
            "vertex enumeration is limited to small programs".into(),
        ));
    }
    let expand = |row: &[Rat]| -> Vec<Rat> {
        col_map
            .iter()
            .map(|&(j, sign)| if sign > 0 { row[j].clone() } else { -row[j].clone() })
            .collect()
    };
    let mut rows: Vec<Vec<Rat>> = lp.constraints.iter().map(|(r, _)| expand(r)).collect();
    let mut rhs: Vec<Rat> = lp.constraints.iter().map(|(_, b)| b.clone()).collect();
    let m_original = rows.len();
    for col in 0..cols {
        let mut r = vec![Rat::zero(); cols];
        r[col] = -Rat::one();
        rows.push(r);
        rhs.push(Rat::zero());
    }
    Ok(SplitProgram {
        cols,
        c: expand(&lp.objective),
        rows,
        rhs,
        m_original,
        col_map,
    })
}

fn to_original(sp: &SplitProgram, x: &[Rat], d: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); d];
    for (col, &(j, sign)) in sp.col_map.iter().enumerate() {
        if sign > 0 {
            out[j] += &x[col];
        } else {
            out[j] -= &x[col];
        }
    }
    out
}

/// Exact solve by vertex enumeration with a verified dual certificate.
pub fn solve_lp(lp: &RationalLP) -> Result<LpCertificate, LpError> {
    let sp = split(lp)?;
    let d = sp.cols;
    let total_rows = sp.rows.len();

    // enumerate vertices; the region is pointed (all columns nonnegative),
    // so feasibility is equivalent to having a feasible vertex
    let mut best: Option<(Rat, Vec<Rat>, Vec<Rat>)> = None; // value, split point, original
    for subset in (0..total_rows).combinations(d) {
        let a: Vec<Vec<Rat>> = subset.iter().map(|&i| sp.rows[i].clone()).collect();
        let b: Vec<Rat> = subset.iter().map(|&i| sp.rhs[i].clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        let feasible = sp
            .rows
            .iter()
            .zip(&sp.rhs)
            .all(|(row, rhs)| dot(row, &x) <= *rhs);
        if !feasible {
            continue;
        }
        let value = dot(&sp.c, &x);
        let orig = to_original(&sp, &x, lp.vars.len());
        let better = match &best {
            None => true,
            Some((bv, _, borig)) => value > *bv || (value == *bv && orig < *borig),
        };
        if better {
            best = Some((value, x, orig));
        }
    }
    let (value, x_split, primal) = best.ok_or(LpError::Infeasible)?;

    // unboundedness: an improving direction r >= 0, A r <= 0, sum r = 1
    let ones = vec![Rat::one(); d];
    for subset in (0..total_rows).combinations(d - 1) {
        let mut a: Vec<Vec<Rat>> = vec![ones.clone()];
        let mut b = vec![Rat::one()];
        for &i in &subset {
            a.push(sp.rows[i].clone());
            b.push(Rat::zero());
        }
        let Some(r) = solve_square(a, b) else { continue };
        let feasible = sp.rows.iter().all(|row| !dot(row, &r).is_positive());
        if feasible && dot(&sp.c, &r).is_positive() {
            return Err(LpError::Unbounded);
        }
    }

    // dual: a nonnegative basic solution supported on binding rows
    let binding: Vec<usize> = (0..total_rows)
        .filter(|&i| dot(&sp.rows[i], &x_split) == sp.rhs[i])
        .collect();
    let mut dual_full: Option<Vec<Rat>> = None;
    'outer: for subset in binding.iter().copied().combinations(d.min(binding.len())) {
        // solve sum_{i in subset} y_i row_i = c (transpose system)
        let a: Vec<Vec<Rat>> = (0..d)
            .map(|j| subset.iter().map(|&i| sp.rows[i][j].clone()).collect())
            .collect();
        let Some(y) = solve_square(a, sp.c.clone()) else { continue };
        if y.iter().any(|v| v.is_negative()) {
            continue;
        }
        let mut full = vec![Rat::zero(); total_rows];
        for (&i, v) in subset.iter().zip(y) {
            full[i] = v;
        }
        dual_full = Some(full);
        break 'outer;
    }
    let dual_full = dual_full
        .ok_or_else(|| LpError::Internal("no nonnegative dual on binding rows".into()))?;

    let cert = LpCertificate {
        value,
        primal,
        dual: dual_full[..sp.m_original].to_vec(),
    };
    if !cert.verify(lp) {
        return Err(LpError::Internal("certificate failed exact verification".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(
        vars: &[&str],
        obj: &[Rat],
        cons: &[(&[Rat], Rat)],
        nonneg: &[bool],
    ) -> RationalLP {
        RationalLP {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            objective: obj.to_vec(),
            constraints: cons.iter().map(|(r, b)| (r.to_vec(), b.clone())).collect(),
            nonneg: nonneg.to_vec(),
        }
    }

    #[test]
    fn single_variable_box() {
        // max x s.t. x <= 1
        let p = lp(&["x"], &[rat(1, 1)], &[(&[rat(1, 1)], rat(1, 1))], &[true]);
        let c = solve_lp(&p).unwrap();
        assert_eq!(c.value, rat(1, 1));
        assert_eq!(c.primal, vec![rat(1, 1)]);
        assert!(c.verify(&p));
    }

    #[test]
    fn infeasible_detected() {
        // x >= 2 and x <= 1
        let p = lp(
            &["x"],
            &[rat(1, 1)],
            &[(&[rat(-1, 1)], rat(-2, 1)), (&[rat(1, 1)], rat(1, 1))],
            &[true],
        );
        assert_eq!(solve_lp(&p), Err(LpError::Infeasible));
    }

    #[test]
    fn unbounded_detected() {
        // max x, x >= 0, no cap
        let p = lp(&["x"], &[rat(1, 1)], &[], &[true]);
        assert_eq!(solve_lp(&p), Err(LpError::Unbounded));
        // bounded direction but unbounded objective in 2 vars
        let p2 = lp(
            &["x", "y"],
            &[rat(1, 1), rat(0, 1)],
            &[(&[rat(0, 1), rat(1, 1)], rat(1, 1))],
            &[true, true],
        );
        assert_eq!(solve_lp(&p2), Err(LpError::Unbounded));
    }

    #[test]
    fn free_variable_split() {
        // max -x with x free and x >= -3 (i.e. -x <= 3): optimum 3 at x = -3
        let p = lp(&["x"], &[rat(-1, 1)], &[(&[rat(-1, 1)], rat(3, 1))], &[false]);
        let c = solve_lp(&p).unwrap();
        assert_eq!(c.value, rat(3, 1));
        assert_eq!(c.primal, vec![rat(-3, 1)]);
        assert!(c.verify(&p));
    }

    #[test]
    fn verify_rejects_tampering() {
        let p = lp(&["x"], &[rat(1, 1)], &[(&[rat(1, 1)], rat(1, 1))], &[true]);
        let mut c = solve_lp(&p).unwrap();
        c.value = rat(2, 1);
        assert!(!c.verify(&p));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/14").unwrap(), rat(3, 14));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational(" -1/10 ").unwrap(), rat(-1, 10));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
