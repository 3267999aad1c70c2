//! Detecting when a sequence indexed by `n` becomes constant.

use std::fmt::Debug;

use crate::error::{Error, Result};

/// Shortest constant tail accepted as evidence of stabilization.
pub const MIN_RUN: usize = 3;

/// A value that is constant on the tail of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stable<T> {
    pub value: T,
    /// Smallest `n` from which the value is constant through the end of the window.
    pub onset: usize,
    pub trace: Vec<(usize, T)>,
}

/// Finds the constant tail of `trace` (ordered by `n`). The tail must cover at least
/// `min_run` consecutive entries, otherwise a stabilization error carrying the trace is
/// returned.
pub fn detect_stable<T: Clone + PartialEq + Debug>(
    trace: Vec<(usize, T)>,
    min_run: usize,
) -> Result<Stable<T>> {
    let Some((_, last)) = trace.last() else {
        return Err(Error::Stabilization { trace: vec![] });
    };
    let mut start = trace.len() - 1;
    while start > 0 && trace[start - 1].1 == *last {
        start -= 1;
    }
    let run = trace.len() - start;
    if run < min_run {
        return Err(Error::Stabilization {
            trace: trace.iter().map(|(n, v)| format!("n={n}: {v:?}")).collect(),
        });
    }
    Ok(Stable {
        value: last.clone(),
        onset: trace[start].0,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_onset() {
        let t = vec![(2, 1), (3, 2), (4, 5), (5, 5), (6, 5)];
        let s = detect_stable(t, 3).unwrap();
        assert_eq!((s.value, s.onset), (5, 4));
    }

    #[test]
    fn short_tail_fails() {
        let t = vec![(2, 1), (3, 2), (4, 5), (5, 5)];
        assert!(matches!(detect_stable(t, 3), Err(Error::Stabilization { .. })));
        assert!(detect_stable::<i32>(vec![], 1).is_err());
    }
}
