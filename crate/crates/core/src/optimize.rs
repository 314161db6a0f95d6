//! Deterministic two-dimensional minimization: uniform grid scan on a
//! periodic box followed by Nelder-Mead refinement.

/// Settings for [`grid_then_nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct MinimizeOptions {
    /// Grid points per axis over one period.
    pub grid: usize,
    /// Edge length of the initial Nelder-Mead simplex.
    pub simplex_scale: f64,
    /// Stop once every vertex lies within this distance of the best one.
    pub x_tolerance: f64,
    pub max_iterations: usize,
    /// Extra Nelder-Mead runs started from the current best point.
    pub restarts: usize,
    /// Number of grid local minima that are refined.
    pub starts: usize,
    /// Relative objective difference below which refined minima tie.
    pub tie_tolerance: f64,
    /// Restarts on each side of the incumbent along the softest direction,
    /// spread over one grid spacing.
    pub valley_starts: usize,
    /// Finite-difference step used to find that direction.
    pub valley_probe: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            grid: 64,
            simplex_scale: std::f64::consts::TAU / 128.0,
            x_tolerance: 1e-13,
            max_iterations: 4000,
            restarts: 8,
            starts: 4,
            tie_tolerance: 1e-8,
            valley_starts: 8,
            valley_probe: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: [f64; 2],
    pub value: f64,
    pub iterations: usize,
}

/// Minimizes `f` over `[0, period)^2`, treating it as periodic.
///
/// The lowest local minima of a uniform grid are refined by Nelder-Mead.
/// More runs start along the softest direction at the incumbent, which
/// separates minima closer together than the grid spacing. Refined values within `tie_tolerance` (relative) of the best
/// count as ties and the lexicographically smallest point among them wins.
/// Returns `None` when `f` is non-finite on the whole grid.
pub fn grid_then_nelder_mead<F>(f: F, period: f64, opts: &MinimizeOptions) -> Option<Minimum>
where
    F: Fn(f64, f64) -> f64,
{
    let g = |x: [f64; 2]| f(x[0], x[1]);
    let wrap = |mut m: Minimum| {
        for c in &mut m.x {
            *c = c.rem_euclid(period);
            if *c >= period {
                *c = 0.0;
            }
        }
        m
    };

    let n = opts.grid.max(1);
    let step = period / n as f64;
    let starts = grid_minima(&g, [0.0, 0.0], step, n, true, opts.starts);
    if starts.is_empty() {
        return None;
    }
    let mut results: Vec<Minimum> = starts.iter().map(|&x| wrap(refine(&g, x, opts))).collect();
    let best = select(&results, opts.tie_tolerance);

    // Narrow curved valleys can hold several minima closer together than the
    // grid spacing. Restart along the valley floor on both sides.
    let soft = soft_direction(&g, best.x, opts.valley_probe);
    let k = opts.valley_starts as isize;
    for s in (-k..=k).filter(|&s| s != 0) {
        let t = step * s as f64 / k as f64;
        let x = [best.x[0] + t * soft[0], best.x[1] + t * soft[1]];
        results.push(wrap(refine(&g, x, opts)));
    }
    Some(select(&results, opts.tie_tolerance))
}

/// Unit eigenvector of the smaller eigenvalue of a finite-difference Hessian at `x`.
fn soft_direction<F>(g: &F, x: [f64; 2], eta: f64) -> [f64; 2]
where
    F: Fn([f64; 2]) -> f64,
{
    let at = |a: f64, b: f64| finite_or_inf(g([x[0] + a * eta, x[1] + b * eta]));
    let c = at(0.0, 0.0);
    let hxx = at(1.0, 0.0) - 2.0 * c + at(-1.0, 0.0);
    let hyy = at(0.0, 1.0) - 2.0 * c + at(0.0, -1.0);
    let hxy = (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / 4.0;
    if !(hxx.is_finite() && hyy.is_finite() && hxy.is_finite()) {
        return [1.0, 0.0];
    }
    // Angle of the stiff eigenvector; the soft one is perpendicular.
    let theta = 0.5 * (2.0 * hxy).atan2(hxx - hyy);
    [-theta.sin(), theta.cos()]
}

fn select(results: &[Minimum], tie_tolerance: f64) -> Minimum {
    let best = results.iter().map(|m| m.value).fold(f64::INFINITY, f64::min);
    let cutoff = best + tie_tolerance * best.abs();
    *results
        .iter()
        .filter(|m| m.value <= cutoff)
        .min_by(|a, b| a.x[0].total_cmp(&b.x[0]).then(a.x[1].total_cmp(&b.x[1])))
        .unwrap_or(&results[0])
}

/// Lowest local minima of `g` sampled on an `n x n` grid, in ascending order of
/// value with grid (lexicographic) order among equal values.
fn grid_minima<F>(g: &F, origin: [f64; 2], step: f64, n: usize, periodic: bool, count: usize) -> Vec<[f64; 2]>
where
    F: Fn([f64; 2]) -> f64,
{
    let point = |i: usize, j: usize| [origin[0] + i as f64 * step, origin[1] + j as f64 * step];
    let values: Vec<f64> = (0..n * n).map(|k| finite_or_inf(g(point(k / n, k % n)))).collect();
    let at = |i: isize, j: isize| -> Option<f64> {
        let n = n as isize;
        if periodic {
            Some(values[(i.rem_euclid(n) * n + j.rem_euclid(n)) as usize])
        } else if (0..n).contains(&i) && (0..n).contains(&j) {
            Some(values[(i * n + j) as usize])
        } else {
            None
        }
    };
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = values[i * n + j];
            if !v.is_finite() {
                continue;
            }
            let is_local_min = (-1..=1isize)
                .flat_map(|di| (-1..=1isize).map(move |dj| (di, dj)))
                .filter(|&d| d != (0, 0))
                .all(|(di, dj)| at(i as isize + di, j as isize + dj).is_none_or(|w| v <= w));
            if is_local_min {
                candidates.push((v, i, j));
            }
        }
    }
    if candidates.is_empty() {
        // Plateaus can hide strict local minima; fall back to the global grid minimum.
        if let Some((k, &v)) = values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)) {
            if v.is_finite() {
                candidates.push((v, k / n, k % n));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    candidates.into_iter().take(count.max(1)).map(|(_, i, j)| point(i, j)).collect()
}

/// Nelder-Mead from `start`, restarted from the best point while it improves.
fn refine<F>(g: &F, start: [f64; 2], opts: &MinimizeOptions) -> Minimum
where
    F: Fn([f64; 2]) -> f64,
{
    let mut m = nelder_mead(g, start, opts);
    for _ in 0..opts.restarts {
        let next = nelder_mead(g, m.x, opts);
        let iterations = m.iterations + next.iterations;
        let improved = next.value < m.value;
        if improved {
            m = next;
        }
        m.iterations = iterations;
        if !improved {
            break;
        }
    }
    m
}

fn finite_or_inf(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
pub fn nelder_mead<F>(f: &F, start: [f64; 2], opts: &MinimizeOptions) -> Minimum
where
    F: Fn([f64; 2]) -> f64,
{
    let eval = |x: [f64; 2]| finite_or_inf(f(x));
    let s = opts.simplex_scale;
    let mut pts = [start, [start[0] + s, start[1]], [start[0], start[1] + s]];
    let mut vals = pts.map(eval);

    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    let mut iterations = 0;
    while iterations < opts.max_iterations {
        // Stable sort keeps the ordering deterministic for equal values.
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.map(|k| pts[k]);
        vals = order.map(|k| vals[k]);

        let diameter = pts[1..]
            .iter()
            .map(|p| (p[0] - pts[0][0]).hypot(p[1] - pts[0][1]))
            .fold(0.0, f64::max);
        if diameter <= opts.x_tolerance {
            break;
        }
        iterations += 1;

        let centroid = lerp(pts[0], pts[1], 0.5);
        let reflected = lerp(pts[2], centroid, 2.0);
        let fr = eval(reflected);
        if fr < vals[0] {
            let expanded = lerp(pts[2], centroid, 3.0);
            let fe = eval(expanded);
            if fe < fr {
                pts[2] = expanded;
                vals[2] = fe;
            } else {
                pts[2] = reflected;
                vals[2] = fr;
            }
            continue;
        }
        if fr < vals[1] {
            pts[2] = reflected;
            vals[2] = fr;
            continue;
        }
        let (contracted, fc) = if fr < vals[2] {
            let c = lerp(centroid, reflected, 0.5);
            (c, eval(c))
        } else {
            let c = lerp(centroid, pts[2], 0.5);
            (c, eval(c))
        };
        if fc < vals[2].min(fr) {
            pts[2] = contracted;
            vals[2] = fc;
            continue;
        }
        for k in 1..3 {
            pts[k] = lerp(pts[0], pts[k], 0.5);
            vals[k] = eval(pts[k]);
        }
    }

    let mut b = 0;
    for k in 1..3 {
        if vals[k] < vals[b] {
            b = k;
        }
    }
    Minimum { x: pts[b], value: vals[b], iterations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let f = |x: [f64; 2]| (x[0] - 0.3).powi(2) + 4.0 * (x[1] + 1.2).powi(2) + 0.5 * x[0] * x[1];
        let m = nelder_mead(&f, [0.0, 0.0], &MinimizeOptions { simplex_scale: 0.1, ..Default::default() });
        // Stationary point of the quadratic, solved by hand.
        let det = 2.0 * 8.0 - 0.25;
        let x0 = (0.6 * 8.0 - 0.5 * (-9.6)) / det;
        let x1 = (2.0 * -9.6 - 0.5 * 0.6) / det;
        assert!((m.x[0] - x0).abs() < 1e-8 && (m.x[1] - x1).abs() < 1e-8, "{m:?}");
    }

    #[test]
    fn periodic_minimum_is_wrapped() {
        let tau = std::f64::consts::TAU;
        let f = |a: f64, b: f64| 2.0 - (a + 0.2).cos() - (b - 1.0).cos();
        let m = grid_then_nelder_mead(f, tau, &MinimizeOptions::default()).unwrap();
        assert!((m.x[0] - (tau - 0.2)).abs() < 1e-7, "{m:?}");
        assert!((m.x[1] - 1.0).abs() < 1e-7);
        assert!((0.0..tau).contains(&m.x[0]));
    }

    #[test]
    fn deterministic() {
        let f = |a: f64, b: f64| (a.sin() * b.cos() + 0.3 * (2.0 * a).cos()).powi(2);
        let o = MinimizeOptions::default();
        let a = grid_then_nelder_mead(f, 6.0, &o).unwrap();
        let b = grid_then_nelder_mead(f, 6.0, &o).unwrap();
        assert_eq!(a.x[0].to_bits(), b.x[0].to_bits());
        assert_eq!(a.x[1].to_bits(), b.x[1].to_bits());
    }

    #[test]
    fn all_nonfinite_grid() {
        assert!(grid_then_nelder_mead(|_, _| f64::NAN, 1.0, &MinimizeOptions::default()).is_none());
    }
}
