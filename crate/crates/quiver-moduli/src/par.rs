//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the `map_*` entry points fan out on
//! rayon; without it they run the sequential path. Both paths produce results
//! in input order, so callers are deterministic either way. The sequential
//! variants stay available under the feature so benches can compare the two.

pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    map_collect_seq(items, f)
}

/// First `Some` in input order, evaluating chunks in parallel so the search
/// can stop early without giving up determinism.
pub fn find_map_first<T, U, F>(items: Vec<T>, chunk: usize, f: F) -> Option<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Option<U> + Sync + Send,
{
    let chunk = chunk.max(1);
    let mut items = items;
    while !items.is_empty() {
        let rest = items.split_off(items.len().min(chunk));
        let head = std::mem::replace(&mut items, rest);
        let results = map_collect(head, &f);
        if let Some(hit) = results.into_iter().flatten().next() {
            return Some(hit);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map_collect(items.clone(), |x| x * x);
        let b = map_collect_seq(items, |x| x * x);
        assert_eq!(a, b);
    }

    #[test]
    fn find_map_first_is_deterministic() {
        let items: Vec<u64> = (0..100).collect();
        let hit = find_map_first(items, 8, |x| if x % 7 == 3 { Some(x) } else { None });
        assert_eq!(hit, Some(3));
    }
}
