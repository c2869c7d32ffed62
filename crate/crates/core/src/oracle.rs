//! Sampling-based verification.
//!
//! Every classification in this crate is backed by independent numerical
//! evidence produced here: range checks over seeded samples, left-inverse
//! residuals over deterministic parameter grids, distinctness gaps, and
//! the two-sided metric check that pins a geodesic and a left inverse
//! against each other through the hyperbolic distance.
//!
//! Randomized checks consume a single 64-bit seed; the sampler expands it
//! into independent per-domain streams, and sample prefixes are stable, so
//! growing the sample count refines a run instead of reshuffling it.
//! Evaluation is embarrassingly parallel; the reducer below computes the
//! maximum chunk by chunk in index order, so reports are identical for any
//! thread count.  `EXTREMAL_DISC_THREADS` caps the worker count.

use serde::{Deserialize, Serialize};

use crate::complex::poincare_distance;
use crate::domains::{sample, DomainTag, SamplePoint};
use crate::error::{Error, Result};
use crate::Complex64;

/// Outcome of one verification run.  `pass` records whether `max_residual`
/// cleared `threshold` under the comparison appropriate to the check:
/// strict for open-range checks, inclusive for residual bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub max_residual: f64,
    pub threshold: f64,
    pub sample_count: usize,
    pub seed: u64,
    pub pass: bool,
    pub worst_point: Option<SamplePoint>,
}

fn thread_count() -> usize {
    match std::env::var("EXTREMAL_DISC_THREADS") {
        Ok(v) => v.parse::<usize>().unwrap_or(1).max(1),
        Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8),
    }
}

fn with_sample_context(e: Error, i: usize) -> Error {
    match e {
        Error::DomainError(m) => Error::DomainError(format!("{m} (sample {i})")),
        Error::InvalidSpec(m) => Error::InvalidSpec(format!("{m} (sample {i})")),
        Error::Internal(m) => Error::Internal(format!("{m} (sample {i})")),
        other => other,
    }
}

/// Maximum of `eval` over `items` with the argmax index.  Chunked over a
/// scoped thread pool; chunk results reduce in index order and an error in
/// the lowest index wins, so the outcome does not depend on the thread
/// count.  Non-finite values are rejected: a NaN residual must fail a
/// verification loudly, not vanish in a comparison.
pub(crate) fn indexed_sup<T, F>(items: &[T], eval: F) -> Result<(f64, Option<usize>)>
where
    T: Sync,
    F: Fn(usize, &T) -> Result<f64> + Sync,
{
    fn scan<T, F>(base: usize, slice: &[T], eval: &F) -> std::result::Result<(f64, Option<usize>), (usize, Error)>
    where
        F: Fn(usize, &T) -> Result<f64>,
    {
        let mut best = (f64::NEG_INFINITY, None);
        for (j, it) in slice.iter().enumerate() {
            let i = base + j;
            let v = eval(i, it).map_err(|e| (i, with_sample_context(e, i)))?;
            if !v.is_finite() {
                return Err((i, Error::Internal(format!("non-finite value at sample {i}"))));
            }
            if v > best.0 {
                best = (v, Some(i));
            }
        }
        Ok(best)
    }

    if items.is_empty() {
        return Ok((0.0, None));
    }
    let nthreads = thread_count().min(items.len());
    if nthreads <= 1 {
        return scan(0, items, &eval).map_err(|(_, e)| e);
    }
    let chunk = items.len().div_ceil(nthreads);
    let results: Vec<std::result::Result<(f64, Option<usize>), (usize, Error)>> =
        std::thread::scope(|s| {
            let eval = &eval;
            let handles: Vec<_> = items
                .chunks(chunk)
                .enumerate()
                .map(|(ci, slice)| s.spawn(move || scan(ci * chunk, slice, eval)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("verification worker panicked")).collect()
        });
    let mut best = (f64::NEG_INFINITY, None);
    let mut first_err: Option<(usize, Error)> = None;
    for r in results {
        match r {
            Ok((v, idx)) => {
                if v > best.0 {
                    best = (v, idx);
                }
            }
            Err((i, e)) => {
                if first_err.as_ref().map_or(true, |(fi, _)| i < *fi) {
                    first_err = Some((i, e));
                }
            }
        }
    }
    match first_err {
        Some((_, e)) => Err(e),
        None => Ok(best),
    }
}

/// Deterministic disc grid: a golden-angle spiral reaching radius 0.97.
/// Spreads points over every radius and direction without clustering, so
/// grid identities exercise the full disc including near the boundary.
pub fn lambda_grid(n: usize) -> Vec<Complex64> {
    const GOLDEN_ANGLE: f64 = 2.399963229728653;
    (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            let r = 0.97 * t.sqrt();
            let th = i as f64 * GOLDEN_ANGLE;
            Complex64::new(r * th.cos(), r * th.sin())
        })
        .collect()
}

/// Check that a map sends `n` seeded samples of the tagged domain into the
/// unit disc.  `closed` admits the closed disc (families touching the
/// boundary in the limit); otherwise membership is strict.
pub fn verify_into_disc<F>(
    f: F,
    tag: &DomainTag,
    n: usize,
    seed: u64,
    closed: bool,
) -> Result<VerificationReport>
where
    F: Fn(&SamplePoint) -> Result<Complex64> + Sync,
{
    let pts = sample(tag, n, seed)?;
    let (sup, argmax) = indexed_sup(&pts, |_, pt| Ok(f(pt)?.norm()))?;
    let pass = if closed { sup <= 1.0 + 1e-12 } else { sup < 1.0 };
    Ok(VerificationReport {
        max_residual: sup,
        threshold: 1.0,
        sample_count: pts.len(),
        seed,
        pass,
        worst_point: argmax.map(|i| pts[i].clone()),
    })
}

/// Residual `|F(f(lambda)) - lambda|` over a deterministic disc grid.
/// `f` produces the domain point of the geodesic at `lambda`; `big_f`
/// evaluates the candidate left inverse there.
pub fn verify_left_inverse<G, F>(f: G, big_f: F, grid_n: usize, tol: f64) -> Result<VerificationReport>
where
    G: Fn(Complex64) -> Result<SamplePoint> + Sync,
    F: Fn(&SamplePoint) -> Result<Complex64> + Sync,
{
    let grid = lambda_grid(grid_n);
    let (sup, argmax) = indexed_sup(&grid, |_, l| {
        let pt = f(*l)?;
        Ok((big_f(&pt)? - l).norm())
    })?;
    Ok(VerificationReport {
        max_residual: sup,
        threshold: tol,
        sample_count: grid.len(),
        seed: 0,
        pass: sup <= tol,
        worst_point: argmax.map(|i| SamplePoint::Disc { z: grid[i] }),
    })
}

/// Supremum of `|F1 - F2|` over seeded samples, with the verdict of the
/// distinctness test at tolerance `tol`.
pub fn distinct_maps<F1, F2>(
    f1: F1,
    f2: F2,
    tag: &DomainTag,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<(bool, f64)>
where
    F1: Fn(&SamplePoint) -> Result<Complex64> + Sync,
    F2: Fn(&SamplePoint) -> Result<Complex64> + Sync,
{
    let pts = sample(tag, n, seed)?;
    let (sup, _) = indexed_sup(&pts, |_, pt| Ok((f1(pt)? - f2(pt)?).norm()))?;
    Ok((sup > tol, sup))
}

/// Hyperbolic distance of the two image values: a lower bound for the
/// invariant distance of `w` and `z` witnessed by the map `F`.
pub fn caratheodory_lb<F>(big_f: F, w: &SamplePoint, z: &SamplePoint) -> Result<f64>
where
    F: Fn(&SamplePoint) -> Result<Complex64>,
{
    poincare_distance(big_f(w)?, big_f(z)?)
}

/// Hyperbolic distance of the parameters: an upper bound for the invariant
/// distance of `f(lambda1)` and `f(lambda2)` witnessed by the disc `f`.
/// Both evaluations are performed so an off-domain geodesic fails here
/// rather than silently producing a bound for nothing.
pub fn lempert_ub_from_geodesic<G>(f: G, lambda1: Complex64, lambda2: Complex64) -> Result<f64>
where
    G: Fn(Complex64) -> Result<SamplePoint>,
{
    let _ = f(lambda1)?;
    let _ = f(lambda2)?;
    poincare_distance(lambda1, lambda2)
}

/// Two-sided metric check: the lower bound through `big_f` meets the upper
/// bound through `f` at the pair `(lambda1, lambda2)`.  Passing certifies
/// simultaneously that `f` is distance-realizing and `big_f` extremal for
/// the pair.
pub fn equality_check<G, F>(
    f: G,
    big_f: F,
    lambda1: Complex64,
    lambda2: Complex64,
    tol: f64,
) -> Result<bool>
where
    G: Fn(Complex64) -> Result<SamplePoint>,
    F: Fn(&SamplePoint) -> Result<Complex64>,
{
    let w = f(lambda1)?;
    let z = f(lambda2)?;
    let lb = caratheodory_lb(&big_f, &w, &z)?;
    let ub = poincare_distance(lambda1, lambda2)?;
    if lb > ub + 1e-12 {
        return Err(Error::Internal(format!(
            "lower bound {lb} exceeds upper bound {ub}; the candidate is not a map into the disc"
        )));
    }
    Ok((lb - ub).abs() <= tol)
}
