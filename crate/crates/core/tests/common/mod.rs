#![allow(dead_code)]

use iregress::dataset::IntervalDataset;
use iregress::interval::Interval;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Data from a random model with slopes of random sign, noisy enough to be
/// interesting but with an interior least-squares solution most of the time.
pub fn random_model_dataset<R: Rng>(rng: &mut R, n: usize, p: usize) -> (IntervalDataset, Vec<f64>) {
    let a: Vec<f64> = (0..p)
        .map(|_| {
            let mag = rng.random_range(0.5..3.0);
            if rng.random::<bool>() {
                mag
            } else {
                -mag
            }
        })
        .collect();
    let b = rng.random_range(-5.0..5.0);
    let mu = rng.random_range(0.0..2.0);
    let mut preds = vec![Vec::with_capacity(n); p];
    let mut resp = Vec::with_capacity(n);
    for _ in 0..n {
        let mut yc = b + rng.random_range(-1.0..1.0);
        let mut yr = mu + rng.random_range(-0.3..0.3);
        for (j, col) in preds.iter_mut().enumerate() {
            let xc = rng.random_range(0.0..10.0);
            let xr = rng.random_range(0.5..2.5);
            yc += a[j] * xc;
            yr += a[j].abs() * xr;
            col.push(Interval::from_center_radius(xc, xr).unwrap());
        }
        resp.push(Interval::from_center_radius(yc, yr.max(0.0)).unwrap());
    }
    (IntervalDataset::new(preds, resp).unwrap(), a)
}

/// Unstructured intervals: no model behind them.
pub fn random_dataset<R: Rng>(rng: &mut R, n: usize, p: usize) -> IntervalDataset {
    let iv =
        |rng: &mut R| Interval::from_center_radius(rng.random_range(-10.0..10.0), rng.random_range(0.0..5.0)).unwrap();
    let preds = (0..p).map(|_| (0..n).map(|_| iv(rng)).collect()).collect();
    let resp = (0..n).map(|_| iv(rng)).collect();
    IntervalDataset::new(preds, resp).unwrap()
}

/// Independent minimiser of the least-squares criterion.
///
/// For every sign orthant the criterion (with `|a_k| = s_k a_k`) is a convex
/// quadratic; it is minimised over the closed orthant from several starts by
/// cyclic coordinate descent with exact line searches computed from three
/// evaluations of that quadratic. The best result wins. Nothing here touches covariances or
/// the stationarity equations.
pub fn brute_force_minimum(data: &IntervalDataset) -> (Vec<f64>, f64, f64, f64) {
    let p = data.p();
    let mut best: Option<(Vec<f64>, f64)> = None;
    for mask in 0..(1usize << p) {
        let signs: Vec<f64> = (0..p).map(|k| if mask >> k & 1 == 1 { -1.0 } else { 1.0 }).collect();
        let eval = |theta: &[f64]| {
            let mut total = 0.0;
            for (i, y) in data.response().iter().enumerate() {
                let mut c = theta[p];
                let mut r = theta[p + 1];
                for k in 0..p {
                    let x = data.predictor(k)[i];
                    c += theta[k] * x.center();
                    r += signs[k] * theta[k] * x.radius();
                }
                total += (y.center() - c).powi(2) + (y.radius() - r).powi(2);
            }
            total
        };
        for start in [0.1, 1.0, 10.0] {
            let mut theta = vec![start; p + 2];
            for (k, s) in signs.iter().enumerate() {
                theta[k] = start * s;
            }
            let mut current = eval(&theta);
            for _sweep in 0..200_000 {
                let before = current;
                for k in 0..p + 2 {
                    let t0 = theta[k];
                    let h = 1.0;
                    theta[k] = t0 - h;
                    let lm = eval(&theta);
                    theta[k] = t0 + h;
                    let lp = eval(&theta);
                    theta[k] = t0;
                    let curv = lp - 2.0 * current + lm;
                    if curv <= 0.0 {
                        continue;
                    }
                    let mut t = t0 - h * (lp - lm) / (2.0 * curv);
                    if k < p && t * signs[k] < 0.0 {
                        t = 0.0;
                    }
                    theta[k] = t;
                    let new = eval(&theta);
                    if new <= current {
                        current = new;
                    } else {
                        theta[k] = t0;
                    }
                }
                if before - current <= 1e-16 * before.max(1e-300) {
                    break;
                }
            }
            if best.as_ref().is_none_or(|(_, v)| current < *v) {
                best = Some((theta, current));
            }
        }
    }
    let (theta, _) = best.unwrap();
    let value = iregress::estimation::objective(data, &theta[..p], theta[p], theta[p + 1]).unwrap();
    (theta[..p].to_vec(), theta[p], theta[p + 1], value)
}
