//! Pareto dominance under the minimization convention.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParetoError {
    #[error("objective vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("cannot filter an empty set of objective vectors")]
    Empty,
}

/// True iff `u` is no worse than `v` everywhere and strictly better somewhere.
pub fn dominates(u: &[f64], v: &[f64]) -> Result<bool, ParetoError> {
    if u.len() != v.len() {
        return Err(ParetoError::LengthMismatch(u.len(), v.len()));
    }
    Ok(dominates_unchecked(u, v))
}

/// [`dominates`] for callers that already guarantee equal lengths.
#[inline]
pub fn dominates_unchecked(u: &[f64], v: &[f64]) -> bool {
    debug_assert_eq!(u.len(), v.len());
    let mut strictly = false;
    for (a, b) in u.iter().zip(v) {
        if a > b {
            return false;
        }
        if a < b {
            strictly = true;
        }
    }
    strictly
}

/// All objectives finite. Anything else is treated as an infeasible evaluation.
#[inline]
pub fn is_feasible(objectives: &[f64]) -> bool {
    !objectives.is_empty() && objectives.iter().all(|v| v.is_finite())
}

/// Indices of the vectors that no other vector in `points` dominates.
/// Duplicates of a non-dominated vector are all kept.
pub fn nondominated_filter<V: AsRef<[f64]>>(points: &[V]) -> Result<Vec<usize>, ParetoError> {
    let first = points.first().ok_or(ParetoError::Empty)?.as_ref().len();
    if let Some(bad) = points.iter().find(|p| p.as_ref().len() != first) {
        return Err(ParetoError::LengthMismatch(first, bad.as_ref().len()));
    }

    // Sort by objectives so that a point can only be dominated by points
    // earlier in the order; candidates are checked against the running front.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (points[a].as_ref(), points[b].as_ref());
        pa.iter()
            .zip(pb)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });

    let mut front: Vec<usize> = Vec::new();
    if first == 2
        && points
            .iter()
            .all(|p| !p.as_ref().iter().any(|v| v.is_nan()))
    {
        // Two objectives: a point is dominated by an earlier group with a
        // smaller first objective and no larger second, or by the head of
        // its own group when that head has a smaller second objective.
        let mut best_before = f64::INFINITY;
        let mut g = 0;
        while g < order.len() {
            let x = points[order[g]].as_ref()[0];
            let head = points[order[g]].as_ref()[1];
            let mut end = g;
            while end < order.len() && points[order[end]].as_ref()[0] == x {
                let y = points[order[end]].as_ref()[1];
                if best_before > y && y <= head {
                    front.push(order[end]);
                }
                end += 1;
            }
            best_before = best_before.min(head);
            g = end;
        }
        front.sort_unstable();
        return Ok(front);
    }
    for &i in &order {
        let p = points[i].as_ref();
        if !front
            .iter()
            .any(|&j| dominates_unchecked(points[j].as_ref(), p))
        {
            front.push(i);
        }
    }
    front.sort_unstable();
    Ok(front)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[1.0, 2.0], &[2.0, 3.0]).unwrap());
        assert!(!dominates(&[1.0, 3.0], &[2.0, 2.0]).unwrap());
        assert!(!dominates(&[2.0, 2.0], &[1.0, 3.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
    }

    #[test]
    fn dominance_length_mismatch() {
        assert_eq!(
            dominates(&[1.0], &[1.0, 2.0]),
            Err(ParetoError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn filter_examples() {
        assert_eq!(nondominated_filter(&[vec![1.0, 1.0]]).unwrap(), vec![0]);
        let pts = vec![vec![1.0, 1.0], vec![2.0, 2.0], vec![0.0, 3.0]];
        assert_eq!(nondominated_filter(&pts).unwrap(), vec![0, 2]);
        let dup = vec![vec![1.0, 2.0], vec![1.0, 2.0]];
        assert_eq!(nondominated_filter(&dup).unwrap(), vec![0, 1]);
    }

    #[test]
    fn filter_rejects_empty() {
        let empty: Vec<Vec<f64>> = Vec::new();
        assert_eq!(nondominated_filter(&empty), Err(ParetoError::Empty));
    }

    #[test]
    fn infinite_objectives_are_infeasible() {
        assert!(is_feasible(&[1.0, 2.0]));
        assert!(!is_feasible(&[1.0, f64::INFINITY]));
        assert!(!is_feasible(&[f64::NAN, 0.0]));
    }
}
