//! Brute-force reference evaluator working directly from raw intervals.
//!
//! Deliberately shares nothing with the library: points are rebuilt from
//! the series, every cell of the grid is visited, and each point's
//! membership is decided by explicit edge comparisons.
#![allow(dead_code)]

pub struct Lifted {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub l: Vec<f64>,
    pub d_co: Vec<f64>,
}

pub fn lift(rr: &[f64]) -> Lifted {
    let m = rr.len() - 2;
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut d_co = Vec::new();
    let mut le = Vec::new();
    for i in 0..m {
        let a = rr[i + 1] - rr[i];
        let b = rr[i + 2] - rr[i + 1];
        x.push(a);
        y.push(b);
        d_co.push((rr[i + 2] - rr[i + 1]).abs() - (rr[i + 1] - rr[i]).abs());
        le.push((a * a + b * b).sqrt());
    }
    let mut total = 0.0;
    for v in &le {
        total += v;
    }
    let mean = total / m as f64;
    let mut l = Vec::new();
    let mut z = Vec::new();
    for i in 0..m {
        let li = if mean == 0.0 {
            0.5
        } else {
            1.0 / (1.0 + (-le[i] / mean).exp())
        };
        l.push(li);
        z.push(d_co[i] * li);
    }
    Lifted { x, y, z, l, d_co }
}

/// (inside, [q1, q2, q3, q4], on_axis) for radius `r`.
pub fn radius_counts(rr: &[f64], r: f64) -> (usize, [usize; 4], usize) {
    let mut inside = 0;
    let mut q = [0usize; 4];
    let mut axis = 0;
    for i in 0..rr.len() - 2 {
        let a = rr[i + 1] - rr[i];
        let b = rr[i + 2] - rr[i + 1];
        if (a * a + b * b).sqrt() < r {
            inside += 1;
            if a > 0.0 && b > 0.0 {
                q[0] += 1;
            } else if a < 0.0 && b > 0.0 {
                q[1] += 1;
            } else if a < 0.0 && b < 0.0 {
                q[2] += 1;
            } else if a > 0.0 && b < 0.0 {
                q[3] += 1;
            } else {
                axis += 1;
            }
        }
    }
    (inside, q, axis)
}

pub fn mean_distance(rr: &[f64], r: f64) -> Option<f64> {
    let mut sum = 0.0;
    let mut n = 0;
    for i in 0..rr.len() - 2 {
        let a = rr[i + 1] - rr[i];
        let b = rr[i + 2] - rr[i + 1];
        let d = (a * a + b * b).sqrt();
        if d < r {
            sum += d;
            n += 1;
        }
    }
    if n == 0 {
        None
    } else {
        Some(sum / n as f64)
    }
}

fn in_bin(v: f64, lo: f64, hi: f64, bins: usize, k: usize) -> bool {
    if hi == lo {
        return k == 0;
    }
    let scaled = (v - lo) * bins as f64;
    let above_lower = k == 0 || scaled >= k as f64 * (hi - lo);
    let below_upper = k == bins - 1 || scaled < (k + 1) as f64 * (hi - lo);
    above_lower && below_upper
}

/// E_TV of the points selected by `keep`, on a grid fitted to them.
pub fn entropy(p: &Lifted, keep: &[usize], div: [usize; 3]) -> f64 {
    if keep.is_empty() {
        return 0.0;
    }
    let coords = [&p.x, &p.y, &p.z];
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for &i in keep {
        for a in 0..3 {
            if coords[a][i] < lo[a] {
                lo[a] = coords[a][i];
            }
            if coords[a][i] > hi[a] {
                hi[a] = coords[a][i];
            }
        }
    }
    let mut bins = div;
    for a in 0..3 {
        if hi[a] == lo[a] {
            bins[a] = 1;
        }
    }
    let cells = bins[0] * bins[1] * bins[2];
    let total = keep.len() as f64;
    let mbar = total / cells as f64;

    let mut e = 0.0;
    for ix in 0..bins[0] {
        for iy in 0..bins[1] {
            for iz in 0..bins[2] {
                let members: Vec<usize> = keep
                    .iter()
                    .copied()
                    .filter(|&i| {
                        in_bin(p.x[i], lo[0], hi[0], bins[0], ix)
                            && in_bin(p.y[i], lo[1], hi[1], bins[1], iy)
                            && in_bin(p.z[i], lo[2], hi[2], bins[2], iz)
                    })
                    .collect();
                let ni = members.len() as f64;
                let prob = (ni - mbar).abs() / total;
                if prob == 0.0 {
                    continue;
                }
                for &j in &members {
                    e += -ni * p.z[j].abs() * prob * prob.ln();
                }
            }
        }
    }
    e
}

pub fn etv(rr: &[f64], div: [usize; 3]) -> f64 {
    let p = lift(rr);
    let all: Vec<usize> = (0..p.x.len()).collect();
    entropy(&p, &all, div)
}

pub fn etv_quadrants(rr: &[f64], div: [usize; 3]) -> [f64; 4] {
    let p = lift(rr);
    let mut out = [0.0; 4];
    let signs = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
    for (k, (sx, sy)) in signs.iter().enumerate() {
        let keep: Vec<usize> = (0..p.x.len())
            .filter(|&i| p.x[i] * sx > 0.0 && p.y[i] * sy > 0.0)
            .collect();
        out[k] = entropy(&p, &keep, div);
    }
    out
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}
