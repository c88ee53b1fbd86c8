//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential iterators. Output order is the
//! input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn filter_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    items.par_iter().filter_map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn filter_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> Option<U>,
{
    items.iter().filter_map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<U, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<U, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    range.map(f).collect()
}

/// Lattice points of the box `lo..=hi` (coordinatewise) accepted by `keep`,
/// in lexicographic order.
pub fn box_points<F>(lo: &[i64], hi: &[i64], keep: F) -> Vec<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync + Send,
{
    let d = lo.len();
    if d == 0 {
        return if keep(&[]) { vec![vec![]] } else { vec![] };
    }
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return vec![];
    }
    // split on the first coordinate; each slab is walked sequentially
    let first: Vec<i64> = (lo[0]..=hi[0]).collect();
    let slabs = map(&first, |&x0| {
        let mut out = Vec::new();
        let mut p = lo.to_vec();
        p[0] = x0;
        loop {
            if keep(&p) {
                out.push(p.clone());
            }
            let mut i = d - 1;
            loop {
                if i == 0 {
                    return out;
                }
                if p[i] < hi[i] {
                    p[i] += 1;
                    break;
                }
                p[i] = lo[i];
                i -= 1;
            }
        }
    });
    slabs.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration_is_lexicographic() {
        let pts = box_points(&[0, 0], &[1, 2], |_| true);
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert!(box_points(&[1], &[0], |_| true).is_empty());
        assert_eq!(box_points(&[], &[], |_| true), vec![Vec::<i64>::new()]);
        assert_eq!(box_points(&[-1, -1, -1], &[1, 1, 1], |p| p.iter().sum::<i64>() == 0).len(), 7);
    }
}
