//! Mode tracking across a parameter sweep.
//!
//! Eigenvalues at neighbouring sweep points are paired greedily by distance
//! in the complex plane, closest pair first. Equal distances are resolved by
//! the difference in shift, then by index, so the result is deterministic.

use num_complex::Complex64;

/// Track ids for `next`, given the eigenvalues of the previous point indexed
/// by track id. Returns `ids` with `ids[j]` the track of `next[j]`.
///
/// Both slices must have the same length.
pub fn assign_tracks(prev_by_track: &[Complex64], next: &[Complex64]) -> Vec<usize> {
    assert_eq!(prev_by_track.len(), next.len(), "mode count changed between sweep points");
    let n = next.len();
    let mut pairs = Vec::with_capacity(n * n);
    for (t, p) in prev_by_track.iter().enumerate() {
        for (j, q) in next.iter().enumerate() {
            pairs.push(((p - q).norm(), (p.re - q.re).abs(), t, j));
        }
    }
    pairs.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.cmp(&b.2))
            .then(a.3.cmp(&b.3))
    });
    let mut ids = vec![usize::MAX; n];
    let mut track_used = vec![false; n];
    let mut left = n;
    for (_, _, t, j) in pairs {
        if left == 0 {
            break;
        }
        if ids[j] == usize::MAX && !track_used[t] {
            ids[j] = t;
            track_used[t] = true;
            left -= 1;
        }
    }
    ids
}

/// Track ids for a whole sweep. Failed points (`None`) are skipped and the
/// next successful point is matched against the last successful one. The
/// first successful point numbers its modes in their given order.
pub fn track_sweep(points: &[Option<Vec<Complex64>>]) -> Vec<Option<Vec<usize>>> {
    let mut out = Vec::with_capacity(points.len());
    let mut last: Option<Vec<Complex64>> = None;
    for p in points {
        let Some(values) = p else {
            out.push(None);
            continue;
        };
        let ids = match &last {
            Some(prev) if prev.len() == values.len() => assign_tracks(prev, values),
            _ => (0..values.len()).collect(),
        };
        let mut by_track = vec![Complex64::default(); values.len()];
        for (j, &t) in ids.iter().enumerate() {
            by_track[t] = values[j];
        }
        last = Some(by_track);
        out.push(Some(ids));
    }
    out
}
