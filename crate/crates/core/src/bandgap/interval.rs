/// Merges closed intervals `[lo, hi]` into a sorted, disjoint cover.
/// Touching intervals are merged.
pub(crate) fn union(mut intervals: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    intervals.retain(|(lo, hi)| lo <= hi);
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

/// Open gaps of a canonical cover within `[start, end]`.
pub(crate) fn complement(cover: &[(f64, f64)], start: f64, end: f64) -> Vec<(f64, f64)> {
    let mut gaps = Vec::with_capacity(cover.len() + 1);
    let mut cursor = start;
    for &(lo, hi) in cover {
        if hi < start {
            continue;
        }
        if lo >= end {
            break;
        }
        if lo > cursor {
            gaps.push((cursor, lo));
        }
        cursor = cursor.max(hi);
    }
    if cursor < end {
        gaps.push((cursor, end));
    }
    gaps
}
