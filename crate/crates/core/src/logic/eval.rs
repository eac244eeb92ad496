//! Query evaluation on finite data instances and on lasso models.
//!
//! The two evaluators are deliberately implemented differently: data evaluation follows
//! the quantifier definitions directly over a window whose last position stands for the
//! whole empty future, while lasso evaluation computes least fixpoints of the one-step
//! expansion laws over the successor function.

use super::data::{DataInstance, LassoModel};
use super::query::Query;
use super::LogicError;

fn data_vector(d: &DataInstance, q: &Query, c: usize) -> Vec<bool> {
    // Positions 0..=c; position c = maxD+1 represents every position after the data.
    match q {
        Query::Top => vec![true; c + 1],
        Query::Bot => vec![false; c + 1],
        Query::Atom(a) => (0..=c).map(|n| n < c && d.holds(a, n)).collect(),
        Query::And(qs) => {
            let mut v = vec![true; c + 1];
            for sub in qs {
                for (x, y) in v.iter_mut().zip(data_vector(d, sub, c)) {
                    *x &= y;
                }
            }
            v
        }
        Query::Next(p) => {
            let inner = data_vector(d, p, c);
            (0..=c).map(|n| inner[(n + 1).min(c)]).collect()
        }
        Query::Diamond(p) => {
            let inner = data_vector(d, p, c);
            (0..=c).map(|n| if n == c { inner[c] } else { (n + 1..=c).any(|m| inner[m]) }).collect()
        }
        Query::Until(l, r) => {
            let lv = data_vector(d, l, c);
            let rv = data_vector(d, r, c);
            (0..=c)
                .map(|n| {
                    if n == c {
                        rv[c]
                    } else {
                        (n + 1..=c).any(|m| rv[m] && (n + 1..m).all(|k| lv[k]))
                    }
                })
                .collect()
        }
    }
}

/// Truth of `q` at time point `at` of the data instance `d` (atoms false outside `d`).
pub fn eval_data(d: &DataInstance, q: &Query, at: usize) -> bool {
    let c = d.max_timestamp() + 1;
    data_vector(d, q, c)[at.min(c)]
}

/// Truth values of `q` at every materialised position of the lasso.
pub fn lasso_truth(m: &LassoModel, q: &Query) -> Vec<bool> {
    let len = m.len();
    match q {
        Query::Top => vec![true; len],
        Query::Bot => vec![false; len],
        Query::Atom(a) => (0..len).map(|n| m.at(n).contains(a)).collect(),
        Query::And(qs) => {
            let mut v = vec![true; len];
            for sub in qs {
                for (x, y) in v.iter_mut().zip(lasso_truth(m, sub)) {
                    *x &= y;
                }
            }
            v
        }
        Query::Next(p) => {
            let inner = lasso_truth(m, p);
            (0..len).map(|n| inner[m.succ(n)]).collect()
        }
        Query::Diamond(p) => until_lfp(m, &vec![true; len], &lasso_truth(m, p)),
        Query::Until(l, r) => until_lfp(m, &lasso_truth(m, l), &lasso_truth(m, r)),
    }
}

/// Least solution of `u(n) = r(s(n)) ∨ (l(s(n)) ∧ u(s(n)))`.
fn until_lfp(m: &LassoModel, l: &[bool], r: &[bool]) -> Vec<bool> {
    let len = m.len();
    let mut u = vec![false; len];
    loop {
        let mut changed = false;
        for n in (0..len).rev() {
            let s = m.succ(n);
            let v = r[s] || (l[s] && u[s]);
            if v && !u[n] {
                u[n] = true;
                changed = true;
            }
        }
        if !changed {
            return u;
        }
    }
}

/// Truth of `q` at materialised position `at` of the lasso.
pub fn eval_lasso(m: &LassoModel, q: &Query, at: usize) -> Result<bool, LogicError> {
    if at >= m.len() {
        return Err(LogicError::PositionOutOfRange { at, len: m.len() });
    }
    Ok(lasso_truth(m, q)[at])
}
