//! Grid evaluation, data-parallel with rayon when the `parallel` feature is
//! enabled. Results always come back in grid order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether `Parallel` actually runs on a thread pool in this build.
    pub const fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map_grid<T, R, F>(items: &[T], mode: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps)
            .map(|i| {
                if i + 1 == steps {
                    max
                } else {
                    min + (max - min) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map_grid(&xs, Parallelism::Parallel, |x| x * x);
        let b = map_grid(&xs, Parallelism::Sequential, |x| x * x);
        assert_eq!(a, b);
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.0, 0.45, 90);
        assert_eq!(v.len(), 90);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[89], 0.45);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }
}
