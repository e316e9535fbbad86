//! Subsets of `[n]` packed into `u32` bitmasks. Bit `j` stands for variable `j + 1`.

/// Largest ambient variable count the bitmask representation supports.
pub const MAX_VARS: usize = 16;

pub type Mask = u32;

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn contains(mask: Mask, j: usize) -> bool {
    mask >> j & 1 == 1
}

#[inline]
pub fn size(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Ascending element indices of a mask.
pub fn elements(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(j)
        }
    })
}

pub fn from_elements<I: IntoIterator<Item = usize>>(items: I) -> Mask {
    items.into_iter().fold(0, |m, j| m | 1 << j)
}

/// All submasks of `mask`, including `0` and `mask` itself, in increasing numeric order.
pub fn submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    // Enumerates by counting in the compressed coordinate space of `mask`.
    let positions: Vec<usize> = elements(mask).collect();
    let count = 1u64 << positions.len();
    (0..count).map(move |c| {
        positions
            .iter()
            .enumerate()
            .filter(|(k, _)| c >> k & 1 == 1)
            .fold(0, |m, (_, &j)| m | 1 << j)
    })
}

/// Submasks of `mask` with exactly `k` elements.
pub fn submasks_of_size(mask: Mask, k: usize) -> impl Iterator<Item = Mask> {
    submasks(mask).filter(move |&s| size(s) == k)
}

/// 1-based set notation, e.g. `{1,3}`; the empty set prints as `{}`.
pub fn format_set(mask: Mask) -> String {
    let inner: Vec<String> = elements(mask).map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// 1-based element list for reports.
pub fn one_based(mask: Mask) -> Vec<usize> {
    elements(mask).map(|j| j + 1).collect()
}

/// Position of `j` among the elements of `mask` (0-indexed, ascending).
#[inline]
pub fn rank_in(mask: Mask, j: usize) -> usize {
    size(mask & ((1u32 << j) - 1))
}
