//! Helpers for vertex sets stored as sorted, duplicate-free `Vec<usize>`.

use crate::error::{Error, Result};

/// Sorts and dedups `set`, rejecting ids `>= n`.
pub fn canonical(set: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut out = set.to_vec();
    out.sort_unstable();
    out.dedup();
    if let Some(&v) = out.last() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    Ok(out)
}

pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Elements of `a` not in `b`.
pub fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect()
}

pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

pub fn first_common(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter().copied().find(|v| b.binary_search(v).is_ok())
}

pub fn contains(set: &[usize], v: usize) -> bool {
    set.binary_search(&v).is_ok()
}

/// `0..n` minus `set`.
pub fn complement(set: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n.saturating_sub(set.len()));
    let mut it = set.iter().peekable();
    for v in 0..n {
        if it.peek() == Some(&&v) {
            it.next();
        } else {
            out.push(v);
        }
    }
    out
}

pub fn remove(set: &mut Vec<usize>, v: usize) {
    if let Ok(i) = set.binary_search(&v) {
        set.remove(i);
    }
}

pub fn insert(set: &mut Vec<usize>, v: usize) {
    if let Err(i) = set.binary_search(&v) {
        set.insert(i, v);
    }
}
