//! Scoped-thread fan-out with results kept in input order.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use kgspec::conditions::{condition_i_from_scan, default_lambda_grid, s_lambda, ConditionReport, SLambdaOptions, Target, Transform};
use kgspec::PotentialSpec;

/// Apply `f` to every item on up to `workers` threads. The output is in
/// item order whatever the completion order.
pub fn run_indexed<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let workers = workers.clamp(1, items.len().max(1));
    if workers == 1 {
        return items.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(i, item);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|r| r.expect("every index is visited"))
        .collect()
}

/// Condition I with the λ scan spread over `workers` threads.
pub fn parallel_condition_i(
    q: &PotentialSpec,
    m: f64,
    lambda_grid: Option<&[f64]>,
    opts: &SLambdaOptions,
    workers: usize,
) -> kgspec::Result<ConditionReport> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(kgspec::Error::InvalidParameter("mass must be positive".into()));
    }
    let mut lambdas = match lambda_grid {
        Some(g) => g.to_vec(),
        None => default_lambda_grid(m),
    };
    if let Some(bad) = lambdas.iter().find(|&&l| !(l > 0.0 && l < m * m)) {
        return Err(kgspec::Error::InvalidParameter(format!("lambda {bad} is outside (0, m^2)")));
    }
    let target = Target::new(q.clone(), Transform::NegativePart)?;
    lambdas.push(m * m);
    let mut values = run_indexed(&lambdas, workers, |_, &l| s_lambda(&target, l, opts))
        .into_iter()
        .collect::<kgspec::Result<Vec<_>>>()?;
    let at_m2 = values.pop().expect("m^2 was appended");
    Ok(condition_i_from_scan(m, &values, &at_m2, (-opts.half_width, opts.half_width)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use kgspec::conditions::check_condition_i;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..97).collect();
        let out = run_indexed(&items, 8, |i, &x| {
            std::thread::sleep(std::time::Duration::from_micros((x * 37) % 200));
            (i, x * x)
        });
        for (i, (j, sq)) in out.into_iter().enumerate() {
            assert_eq!(i, j);
            assert_eq!(sq, (i * i) as u64);
        }
        assert!(run_indexed(&[] as &[u8], 4, |_, _| 0).is_empty());
    }

    #[test]
    fn parallel_matches_sequential_condition_i() {
        let spec = PotentialSpec::square_well(2.0, 0.5).unwrap();
        let opts = SLambdaOptions {
            half_width: 10.0,
            cell: 0.05,
            tol: 1e-10,
        };
        let grid = [0.1, 0.3, 0.6, 0.9];
        let a = check_condition_i(&spec, 1.0, Some(&grid), &opts).unwrap();
        let b = parallel_condition_i(&spec, 1.0, Some(&grid), &opts, 3).unwrap();
        assert_eq!(a, b);
    }
}
