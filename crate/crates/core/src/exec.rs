//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on the rayon
//! global pool; without it every mode runs sequentially. Results are always
//! returned in input order, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// The mode the crate was built to prefer.
    pub fn preferred() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }

    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// The result for the lowest index whose `f` returns `Some`. Parallel runs
    /// may evaluate later indices speculatively but never report them ahead of
    /// an earlier success.
    pub fn find_first<R, F>(self, count: usize, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..count).into_par_iter().map(&f).find_first(Option::is_some).flatten(),
            _ => (0..count).find_map(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_keeps_order() {
        let items: Vec<u64> = (0..200).collect();
        let seq = Exec::Sequential.map(items.clone(), |x| x * x);
        let par = Exec::Parallel.map(items, |x| x * x);
        assert_eq!(seq, par);
    }

    #[test]
    fn find_first_is_lowest_index() {
        for mode in [Exec::Sequential, Exec::Parallel] {
            let hit = mode.find_first(1000, |i| (i % 97 == 13 && i > 100).then_some(i));
            assert_eq!(hit, Some(110));
            assert_eq!(mode.find_first(10, |_| None::<usize>), None);
        }
    }
}
