//! Multi-start descent on the unit sphere.
//!
//! Used to hunt for counterexamples; results are heuristic bounds, never
//! certificates of a global minimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::sign_products;
use super::SearchBudget;
use crate::tensor::{dot, norm2, Tensor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormExtremum {
    pub value: f64,
    pub argmin: Vec<f64>,
}

/// Smallest value of `A x^m` found over the unit sphere.
pub fn min_form_value(a: &Tensor, budget: &SearchBudget) -> FormExtremum {
    let n = a.dim();
    let support: Vec<usize> = (0..n).collect();
    let objective = |x: &[f64]| {
        let value = a.form_value(x).expect("dimension checked");
        (value, a.form_gradient(x).expect("dimension checked"))
    };
    let value_only = |x: &[f64]| a.form_value(x).expect("dimension checked");
    let (value, argmin) = multi_start(n, &support, budget, budget.starts, |x0| {
        descend(x0, &support, budget.max_iters, &objective, &value_only)
    });
    FormExtremum { value, argmin }
}

/// Largest value of `A x^m` found; `argmin` holds the maximizer.
pub fn max_form_value(a: &Tensor, budget: &SearchBudget) -> FormExtremum {
    let r = min_form_value(&a.scaled(-1.0), budget);
    FormExtremum { value: -r.value, argmin: r.argmin }
}

// Deterministic multi-start over `support`: the first `|support|` starts are
// coordinate vectors, then the normalized all-ones vector, then seeded random
// points. Ties go to the lowest start index.
fn multi_start<F>(n: usize, support: &[usize], budget: &SearchBudget, starts: usize, run: F) -> (f64, Vec<f64>)
where
    F: Fn(Vec<f64>) -> (f64, Vec<f64>) + Sync,
{
    let starts = starts.max(1);
    let results: Vec<(f64, Vec<f64>)> = (0..starts)
        .into_par_iter()
        .map(|k| run(start_point(n, support, budget.seed, k)))
        .collect();
    results
        .into_iter()
        .reduce(|best, r| if r.0 < best.0 { r } else { best })
        .expect("at least one start")
}

fn start_point(n: usize, support: &[usize], seed: u64, k: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    let s = support.len();
    if k < s {
        x[support[k]] = 1.0;
        return x;
    }
    if k == s {
        let c = 1.0 / (s as f64).sqrt();
        support.iter().for_each(|&i| x[i] = c);
        return x;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    loop {
        for &i in support {
            x[i] = rng.gen_range(-1.0..1.0);
        }
        let r = norm2(&x);
        if r > 1e-3 {
            x.iter_mut().for_each(|v| *v /= r);
            return x;
        }
    }
}

/// Riemannian gradient descent on the sphere restricted to `support`, with
/// Armijo backtracking and renormalization as the retraction.
fn descend<F, G>(mut x: Vec<f64>, support: &[usize], iters: usize, objective: &F, value_only: &G) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
    G: Fn(&[f64]) -> f64,
{
    let (mut value, mut grad) = objective(&x);
    let mut step = 1.0;
    for _ in 0..iters {
        let mut rg = vec![0.0; x.len()];
        for &i in support {
            rg[i] = grad[i];
        }
        let radial = dot(&rg, &x);
        for &i in support {
            rg[i] -= radial * x[i];
        }
        let gnorm2 = dot(&rg, &rg);
        if gnorm2.sqrt() <= 1e-14 * (1.0 + value.abs()) {
            break;
        }
        let mut accepted = false;
        while step > 1e-14 {
            let mut trial: Vec<f64> = x.iter().zip(&rg).map(|(xi, gi)| xi - step * gi).collect();
            let r = norm2(&trial);
            trial.iter_mut().for_each(|v| *v /= r);
            let tv = value_only(&trial);
            if tv <= value - 1e-4 * step * gnorm2 {
                x = trial;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        let next = objective(&x);
        value = next.0;
        grad = next.1;
    }
    (value, x)
}

/// Best vector found for `max_{i in S} x_i (A x^{m-1})_i` over supports `S`,
/// returned together with that objective value. Supports are scanned in a
/// fixed order and the scan stops as soon as the value drops to `stop_below`.
pub(crate) fn sign_search(a: &Tensor, budget: &SearchBudget, stop_below: f64) -> (f64, Vec<f64>) {
    let n = a.dim();
    let supports: Vec<Vec<usize>> = if n <= budget.support_cap {
        let mut all: Vec<Vec<usize>> = (1u64..(1u64 << n))
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.len() >= 2)
            .collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        all
    } else {
        vec![(0..n).collect()]
    };
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for support in supports {
        let starts = (budget.starts >> (n - support.len()).min(31)).max(4);
        let run = |x0: Vec<f64>| smoothed_max_descent(a, x0, &support, budget.max_iters, scale);
        let found = multi_start(n, &support, budget, starts, run);
        if best.as_ref().map_or(true, |b| found.0 < b.0) {
            best = Some(found);
        }
        if best.as_ref().is_some_and(|b| b.0 <= stop_below) {
            break;
        }
    }
    best.unwrap_or_else(|| {
        let mut x = vec![0.0; n];
        x[0] = 1.0;
        (max_on(&sign_products(a, &x), &[0]), x)
    })
}

fn max_on(h: &[f64], support: &[usize]) -> f64 {
    support.iter().map(|&i| h[i]).fold(f64::NEG_INFINITY, f64::max)
}

// Log-sum-exp smoothing of the max with a decreasing temperature.
fn smoothed_max_descent(a: &Tensor, x0: Vec<f64>, support: &[usize], iters: usize, scale: f64) -> (f64, Vec<f64>) {
    const TEMPERATURES: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-6];
    let per_stage = (iters / TEMPERATURES.len()).max(1);
    let mut x = x0;
    for t in TEMPERATURES {
        let tau = t * scale;
        let objective = |x: &[f64]| smoothed_value_grad(a, x, support, tau);
        let value_only = |x: &[f64]| smoothed_value(&sign_products(a, x), support, tau);
        x = descend(x, support, per_stage, &objective, &value_only).1;
    }
    (max_on(&sign_products(a, &x), support), x)
}

fn smoothed_value(h: &[f64], support: &[usize], tau: f64) -> f64 {
    let top = max_on(h, support);
    let sum: f64 = support.iter().map(|&i| ((h[i] - top) / tau).exp()).sum();
    top + tau * sum.ln()
}

fn smoothed_value_grad(a: &Tensor, x: &[f64], support: &[usize], tau: f64) -> (f64, Vec<f64>) {
    let n = a.dim();
    let y = a.contract_tail(x);
    let h: Vec<f64> = x.iter().zip(&y).map(|(xi, yi)| xi * yi).collect();
    let top = max_on(&h, support);
    let weights: Vec<f64> = support.iter().map(|&i| ((h[i] - top) / tau).exp()).collect();
    let total: f64 = weights.iter().sum();
    let jac = a.apply_jacobian(x).expect("dimension checked");
    let mut grad = vec![0.0; n];
    for (&i, w) in support.iter().zip(&weights) {
        let w = w / total;
        // d(x_i y_i)/dx_k = delta_ik y_i + x_i J_ik
        grad[i] += w * y[i];
        for k in 0..n {
            grad[k] += w * x[i] * jac[i * n + k];
        }
    }
    (top + tau * total.ln(), grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_form_examples() {
        let b = SearchBudget::default();
        let r = min_form_value(&Tensor::identity(4, 2), &b);
        assert!((r.value - 0.5).abs() < 1e-9, "{}", r.value);
        assert!((r.argmin[0].abs() - 0.5f64.sqrt()).abs() < 1e-5);
        let r = min_form_value(&Tensor::identity(2, 3), &b);
        assert!((r.value - 1.0).abs() < 1e-12);
        let m = Tensor::new(2, 2, vec![1.0, 0.0, 0.0, -2.0]).unwrap();
        let r = min_form_value(&m, &b);
        assert!((r.value + 2.0).abs() < 1e-12);
        assert!(r.argmin[0].abs() < 1e-6);
    }

    #[test]
    fn search_is_deterministic() {
        let a = Tensor::from_fn(4, 3, |i| ((i[0] * 7 + i[1] * 3 + i[2] * 5 + i[3]) % 5) as f64 - 2.0);
        let b = SearchBudget { starts: 16, ..SearchBudget::default() };
        assert_eq!(min_form_value(&a, &b), min_form_value(&a, &b));
    }
}
