//! Pool-adjacent-violators projection onto nonincreasing sequences.

/// Euclidean projection of `values` onto the cone of nonincreasing sequences.
pub fn project_nonincreasing(values: &[f64]) -> Vec<f64> {
    // Blocks of (sum, count); adjacent blocks are merged while the later
    // block's mean exceeds the earlier one's.
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (s1, c1) = blocks[blocks.len() - 1];
            let (s0, c0) = blocks[blocks.len() - 2];
            if s1 / c1 as f64 > s0 / c0 as f64 {
                blocks.pop();
                let last = blocks.last_mut().unwrap();
                *last = (s0 + s1, c0 + c1);
            } else {
                break;
            }
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (s, c) in blocks {
        let mean = s / c as f64;
        out.extend(std::iter::repeat_n(mean, c));
    }
    out
}

/// Projection onto nonincreasing sequences with entries in `[lo, hi]`.
///
/// Clamping the isotonic fit gives the projection onto the intersection.
pub fn project_nonincreasing_box(values: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    project_nonincreasing(values)
        .into_iter()
        .map(|v| v.clamp(lo, hi))
        .collect()
}
