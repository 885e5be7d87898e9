//! Allocation and cache helpers for the large per-symbol arrays.

/// Below this size huge pages are not requested.
const HUGE_MIN: usize = 4 << 20;
const HUGE_PAGE: usize = 2 << 20;

/// `vec![v; n]`, backed by transparent huge pages where the OS supports
/// them. Random access into arrays of tens of megabytes is otherwise
/// dominated by TLB misses.
pub(crate) fn filled<T: Clone>(n: usize, v: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n);
    advise_huge(out.as_ptr() as usize, n * std::mem::size_of::<T>());
    out.resize(n, v);
    out
}

/// An empty vector with room for `n` elements, allocated like [`filled`].
pub(crate) fn reserve<T>(n: usize) -> Vec<T> {
    let out = Vec::with_capacity(n);
    advise_huge(out.as_ptr() as usize, n * std::mem::size_of::<T>());
    out
}

/// Collects an exact-size iterator into a [`reserve`]d vector.
pub(crate) fn collect<T, I: ExactSizeIterator<Item = T>>(it: I) -> Vec<T> {
    let mut out = reserve(it.len());
    out.extend(it);
    out
}

#[cfg(target_os = "linux")]
fn advise_huge(addr: usize, len: usize) {
    if len < HUGE_MIN {
        return;
    }
    let start = addr.next_multiple_of(HUGE_PAGE);
    let end = (addr + len) / HUGE_PAGE * HUGE_PAGE;
    if end > start {
        // SAFETY: the range lies inside a live allocation we own; the call
        // only changes paging policy and its failure is harmless
        unsafe {
            libc::madvise(start as *mut libc::c_void, end - start, libc::MADV_HUGEPAGE);
        }
    }
}

#[cfg(not(target_os = "linux"))]
fn advise_huge(_addr: usize, _len: usize) {}

/// Hint that `*x` is needed soon. No effect on other architectures.
#[inline(always)]
pub(crate) fn prefetch<T>(x: &T) {
    #[cfg(target_arch = "x86_64")]
    // SAFETY: prefetching is a hint and never faults
    unsafe {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        _mm_prefetch::<_MM_HINT_T0>(x as *const T as *const i8);
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = x;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filled_and_collect_match_std() {
        assert_eq!(filled(3, 7u32), vec![7, 7, 7]);
        let big = filled(3 << 20, -1i32);
        assert!(big.iter().all(|&x| x == -1));
        assert_eq!(collect((0..5u8).map(|x| x * 2)), vec![0, 2, 4, 6, 8]);
        assert!(filled::<u8>(0, 1).is_empty());
    }
}
