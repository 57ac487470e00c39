//! Exact rational linear programming by dense primal simplex with Bland's
//! anti-cycling rule.
//!
//! Problems are maximization over `x >= 0` with constraints `Ax <= b`,
//! `b >= 0`, so the all-slack basis is feasible and no phase-1 is needed.
//! Every covering/packing program in this crate fits that shape (covering
//! programs are solved through their packing duals). The solver refuses
//! problems with more than 5,000 nonzero coefficients: it exists for desk
//! scale exact computation, not bulk optimization.

use crate::rat::Rat;
use thiserror::Error;

const MAX_NONZEROS: usize = 5000;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("LP too large: {nonzeros} nonzeros exceeds the {limit} limit")]
    TooLarge { nonzeros: usize, limit: usize },
    #[error("LP is unbounded in column {0}")]
    Unbounded(usize),
    #[error("negative right-hand side {0} in row {1}; the slack basis must be feasible")]
    NegativeRhs(Rat, usize),
    #[error("malformed LP: {0}")]
    Malformed(String),
}

/// `maximize obj . x  subject to  rows[i] . x <= rhs[i],  x >= 0`.
#[derive(Debug, Clone, Default)]
pub struct LpProblem {
    pub num_vars: usize,
    /// Sparse rows: (list of (variable, coefficient), right-hand side).
    pub rows: Vec<(Vec<(usize, Rat)>, Rat)>,
    pub objective: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: Rat,
    /// Optimal structural variable values.
    pub primal: Vec<Rat>,
    /// Optimal dual values, one per constraint row.
    pub dual: Vec<Rat>,
}

/// Solves the maximization problem exactly.
pub fn solve_max(p: &LpProblem) -> Result<LpSolution, LpError> {
    let nv = p.num_vars;
    if p.objective.len() != nv {
        return Err(LpError::Malformed(format!(
            "objective has {} entries for {} variables",
            p.objective.len(),
            nv
        )));
    }
    let nonzeros: usize = p
        .rows
        .iter()
        .map(|(r, _)| r.iter().filter(|(_, c)| !c.is_zero()).count())
        .sum();
    if nonzeros > MAX_NONZEROS {
        return Err(LpError::TooLarge {
            nonzeros,
            limit: MAX_NONZEROS,
        });
    }
    let m = p.rows.len();
    let width = nv + m + 1; // structural + slack + rhs
    let rhs_col = nv + m;
    let mut tab: Vec<Vec<Rat>> = vec![vec![Rat::zero(); width]; m + 1];
    for (i, (row, rhs)) in p.rows.iter().enumerate() {
        if rhs.is_negative() {
            return Err(LpError::NegativeRhs(rhs.clone(), i));
        }
        for (j, c) in row {
            if *j >= nv {
                return Err(LpError::Malformed(format!(
                    "row {i} references variable {j} out of {nv}"
                )));
            }
            tab[i][*j] = &tab[i][*j] + c;
        }
        tab[i][nv + i] = Rat::one();
        tab[i][rhs_col] = rhs.clone();
    }
    // Cost row holds reduced costs c_j - z_j; its rhs cell holds -value.
    for j in 0..nv {
        tab[m][j] = p.objective[j].clone();
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    loop {
        // Bland: entering variable = smallest index with positive reduced cost.
        let Some(enter) = (0..nv + m).find(|&j| tab[m][j].is_positive()) else {
            break;
        };
        // Ratio test; ties broken by smallest basis variable index (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][rhs_col] / &tab[i][enter];
            let better = match &best {
                None => true,
                Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        let Some(li) = leave else {
            return Err(LpError::Unbounded(enter));
        };
        // Pivot on (li, enter).
        let piv = tab[li][enter].clone();
        for c in tab[li].iter_mut() {
            *c = &*c / &piv;
        }
        for i in 0..=m {
            if i == li || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter].clone();
            for j in 0..width {
                let delta = &f * &tab[li][j];
                tab[i][j] = &tab[i][j] - &delta;
            }
        }
        basis[li] = enter;
    }
    let mut primal = vec![Rat::zero(); nv];
    for i in 0..m {
        if basis[i] < nv {
            primal[basis[i]] = tab[i][rhs_col].clone();
        }
    }
    let dual: Vec<Rat> = (0..m).map(|i| -tab[m][nv + i].clone()).collect();
    let value = -tab[m][rhs_col].clone();
    Ok(LpSolution {
        value,
        primal,
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(nv: usize, rows: Vec<(Vec<(usize, i64, i64)>, (i64, i64))>, obj: Vec<(i64, i64)>) -> LpProblem {
        LpProblem {
            num_vars: nv,
            rows: rows
                .into_iter()
                .map(|(r, (bp, bq))| {
                    (
                        r.into_iter().map(|(j, p, q)| (j, Rat::frac(p, q))).collect(),
                        Rat::frac(bp, bq),
                    )
                })
                .collect(),
            objective: obj.into_iter().map(|(p, q)| Rat::frac(p, q)).collect(),
        }
    }

    #[test]
    fn simple_box() {
        let p = lp(
            2,
            vec![
                (vec![(0, 1, 1)], (1, 1)),
                (vec![(1, 1, 1)], (1, 1)),
            ],
            vec![(1, 1), (1, 1)],
        );
        let s = solve_max(&p).unwrap();
        assert_eq!(s.value, Rat::int(2));
        assert_eq!(s.primal, vec![Rat::one(), Rat::one()]);
        assert_eq!(s.dual, vec![Rat::one(), Rat::one()]);
    }

    #[test]
    fn duality_holds_exactly() {
        let p = lp(
            2,
            vec![
                (vec![(0, 1, 1), (1, 1, 1)], (4, 1)),
                (vec![(0, 1, 1), (1, 3, 1)], (6, 1)),
            ],
            vec![(3, 1), (2, 1)],
        );
        let s = solve_max(&p).unwrap();
        // Strong duality: b.y == value; dual feasibility: A^T y >= c, y >= 0.
        let by = &(&Rat::int(4) * &s.dual[0]) + &(&Rat::int(6) * &s.dual[1]);
        assert_eq!(by, s.value);
        assert!(s.dual.iter().all(|y| !y.is_negative()));
        let col0 = &s.dual[0] + &s.dual[1];
        let col1 = &s.dual[0] + &(&Rat::int(3) * &s.dual[1]);
        assert!(col0 >= Rat::int(3) && col1 >= Rat::int(2));
        // Primal feasibility and value.
        let ax0 = &s.primal[0] + &s.primal[1];
        assert!(ax0 <= Rat::int(4));
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Classic degenerate instance on which naive pivoting cycles.
        let p = lp(
            4,
            vec![
                (
                    vec![(0, 1, 4), (1, -60, 1), (2, -1, 25), (3, 9, 1)],
                    (0, 1),
                ),
                (
                    vec![(0, 1, 2), (1, -90, 1), (2, -1, 50), (3, 3, 1)],
                    (0, 1),
                ),
                (vec![(2, 1, 1)], (1, 1)),
            ],
            vec![(3, 4), (-150, 1), (1, 50), (-6, 1)],
        );
        let s = solve_max(&p).unwrap();
        assert_eq!(s.value, Rat::frac(1, 20));
    }

    #[test]
    fn unbounded_and_malformed() {
        let p = lp(1, vec![], vec![(1, 1)]);
        assert!(matches!(solve_max(&p), Err(LpError::Unbounded(0))));
        let p = lp(1, vec![(vec![(0, 1, 1)], (-1, 1))], vec![(1, 1)]);
        assert!(matches!(solve_max(&p), Err(LpError::NegativeRhs(..))));
        let mut big = LpProblem {
            num_vars: 101,
            rows: Vec::new(),
            objective: vec![Rat::zero(); 101],
        };
        for _ in 0..51 {
            big.rows
                .push(((0..101).map(|j| (j, Rat::one())).collect(), Rat::one()));
        }
        assert!(matches!(solve_max(&big), Err(LpError::TooLarge { .. })));
    }
}
