//! Exact rational geometry on points, segments and axis-aligned boxes.
//! Distances are compared squared so that no radicals appear.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type QPoint = [Q; 3];

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qp(p: [i64; 3]) -> QPoint {
    [q(p[0]), q(p[1]), q(p[2])]
}

pub fn sub(a: &QPoint, b: &QPoint) -> QPoint {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn add(a: &QPoint, b: &QPoint) -> QPoint {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn scale(a: &QPoint, s: &Q) -> QPoint {
    [&a[0] * s, &a[1] * s, &a[2] * s]
}

pub fn dot(a: &QPoint, b: &QPoint) -> Q {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn norm2(a: &QPoint) -> Q {
    dot(a, a)
}

pub fn dist2(a: &QPoint, b: &QPoint) -> Q {
    norm2(&sub(a, b))
}

/// Point on segment `a + t (b - a)`.
pub fn lerp(a: &QPoint, b: &QPoint, t: &Q) -> QPoint {
    add(a, &scale(&sub(b, a), t))
}

/// Squared distance from `p` to the closed segment `ab`.
pub fn point_segment_dist2(p: &QPoint, a: &QPoint, b: &QPoint) -> Q {
    let u = sub(b, a);
    let uu = norm2(&u);
    if uu.is_zero() {
        return dist2(p, a);
    }
    let t = dot(&sub(p, a), &u) / &uu;
    if !t.is_positive() {
        dist2(p, a)
    } else if t >= Q::one() {
        dist2(p, b)
    } else {
        dist2(p, &lerp(a, b, &t))
    }
}

/// Squared distance between closed segments `ab` and `cd`.
pub fn segment_segment_dist2(a: &QPoint, b: &QPoint, c: &QPoint, d: &QPoint) -> Q {
    let mut best = [
        point_segment_dist2(a, c, d),
        point_segment_dist2(b, c, d),
        point_segment_dist2(c, a, b),
        point_segment_dist2(d, a, b),
    ]
    .into_iter()
    .min()
    .expect("four candidates");
    let u = sub(b, a);
    let w = sub(d, c);
    let r = sub(a, c);
    let (uu, ww, uw) = (norm2(&u), norm2(&w), dot(&u, &w));
    let det = &uu * &ww - &uw * &uw;
    if det.is_positive() {
        // interior stationary point of |r + s u - t w|^2
        let (ru, rw) = (dot(&r, &u), dot(&r, &w));
        let s = (&uw * &rw - &ww * &ru) / &det;
        let t = (&uu * &rw - &uw * &ru) / &det;
        let unit = |x: &Q| !x.is_negative() && *x <= Q::one();
        if unit(&s) && unit(&t) {
            best = best.min(dist2(&lerp(a, b, &s), &lerp(c, d, &t)));
        }
    }
    best
}

/// Squared distance from a closed segment to a closed axis-aligned box.
pub fn segment_box_dist2(a: &QPoint, b: &QPoint, lo: &QPoint, hi: &QPoint) -> Q {
    let u = sub(b, a);
    let mut cuts = vec![Q::zero(), Q::one()];
    for k in 0..3 {
        if !u[k].is_zero() {
            for bound in [&lo[k], &hi[k]] {
                let t = (bound - &a[k]) / &u[k];
                if t.is_positive() && t < Q::one() {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let two = q(2);
    let mut best: Option<Q> = None;
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / &two;
        // on this piece each axis is either clamped to one face or inside the slab
        let (mut qa, mut qb, mut qc) = (Q::zero(), Q::zero(), Q::zero());
        for k in 0..3 {
            let x = &a[k] + &u[k] * &mid;
            let face = if x < lo[k] {
                &lo[k]
            } else if x > hi[k] {
                &hi[k]
            } else {
                continue;
            };
            let off = &a[k] - face;
            qa += &u[k] * &u[k];
            qb += &two * &u[k] * &off;
            qc += &off * &off;
        }
        let eval = |t: &Q| &qa * t * t + &qb * t + &qc;
        let mut cand = eval(&w[0]).min(eval(&w[1]));
        if qa.is_positive() {
            let t = -&qb / (&two * &qa);
            if t > w[0] && t < w[1] {
                cand = cand.min(eval(&t));
            }
        }
        best = Some(match best {
            Some(b) => b.min(cand),
            None => cand,
        });
    }
    best.expect("at least one piece")
}

/// True when two segments meet only in a shared endpoint (or not at all).
pub fn segments_independent(a: &QPoint, b: &QPoint, c: &QPoint, d: &QPoint) -> bool {
    let shared: Vec<&QPoint> = [a, b].into_iter().filter(|p| *p == c || *p == d).collect();
    match shared.len() {
        0 => segment_segment_dist2(a, b, c, d).is_positive(),
        1 => {
            let s = shared[0];
            let far1 = if s == a { b } else { a };
            let far2 = if s == c { d } else { c };
            point_segment_dist2(far1, c, d).is_positive() && point_segment_dist2(far2, a, b).is_positive()
        }
        _ => false,
    }
}

/// Largest power of two (possibly fractional) whose square is strictly below `bound2`.
pub fn pow2_below_sqrt(bound2: &Q) -> Q {
    assert!(bound2.is_positive());
    let mut x = Q::one();
    let two = q(2);
    while &x * &x >= *bound2 {
        x /= &two;
    }
    while &(&x * &two) * &(&x * &two) < *bound2 {
        x *= &two;
    }
    x
}

/// Floor of a non-negative rational as `i64`.
pub fn floor_i64(x: &Q) -> i64 {
    i64::try_from(x.floor().to_integer()).expect("coordinate fits in i64")
}

/// Converts an integral rational to `i64`; `None` when fractional or out of range.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

fn orient2(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> i128 {
    let (ax, ay) = (a[0] as i128, a[1] as i128);
    (b[0] as i128 - ax) * (c[1] as i128 - ay) - (b[1] as i128 - ay) * (c[0] as i128 - ax)
}

fn on_box(a: [i64; 2], b: [i64; 2], p: [i64; 2]) -> bool {
    (a[0].min(b[0])..=a[0].max(b[0])).contains(&p[0]) && (a[1].min(b[1])..=a[1].max(b[1])).contains(&p[1])
}

/// Integer test: `p` lies on the closed segment `ab`.
pub fn on_segment2(a: [i64; 2], b: [i64; 2], p: [i64; 2]) -> bool {
    orient2(a, b, p) == 0 && on_box(a, b, p)
}

/// Integer version of [`segments_independent`] for planar lattice segments.
pub fn segments_independent2(a: [i64; 2], b: [i64; 2], c: [i64; 2], d: [i64; 2]) -> bool {
    let shared = [a, b].iter().filter(|p| **p == c || **p == d).count();
    match shared {
        0 => {
            let (o1, o2) = (orient2(a, b, c), orient2(a, b, d));
            let (o3, o4) = (orient2(c, d, a), orient2(c, d, b));
            if o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0 {
                return false;
            }
            !(on_segment2(a, b, c) || on_segment2(a, b, d) || on_segment2(c, d, a) || on_segment2(c, d, b))
        }
        1 => {
            let s = if a == c || a == d { a } else { b };
            let far1 = if s == a { b } else { a };
            let far2 = if s == c { d } else { c };
            !on_segment2(c, d, far1) && !on_segment2(a, b, far2)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> QPoint {
        qp([x, y, 0])
    }

    #[test]
    fn point_to_segment() {
        assert_eq!(point_segment_dist2(&p(0, 0), &p(1, 0), &p(0, 1)), qf(1, 2));
        assert_eq!(point_segment_dist2(&p(3, 0), &p(0, 0), &p(1, 0)), q(4));
    }

    #[test]
    fn segment_pairs() {
        assert_eq!(segment_segment_dist2(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)), q(0));
        assert_eq!(segment_segment_dist2(&p(0, 0), &p(2, 0), &p(0, 1), &p(2, 1)), q(1));
        let skew = segment_segment_dist2(&qp([0, 0, 0]), &qp([2, 0, 0]), &qp([1, -1, 1]), &qp([1, 1, 1]));
        assert_eq!(skew, q(1));
        assert!(segments_independent(&p(0, 0), &p(1, 0), &p(0, 0), &p(0, 1)));
        assert!(!segments_independent(&p(0, 0), &p(2, 0), &p(0, 0), &p(1, 0)));
        assert!(segments_independent2([0, 0], [1, 0], [0, 0], [0, 1]));
        assert!(!segments_independent2([0, 0], [2, 0], [0, 0], [1, 0]));
        assert!(!segments_independent2([0, 0], [2, 2], [0, 2], [2, 0]));
        assert!(!segments_independent2([0, 0], [2, 0], [1, 0], [1, 5]));
        assert!(segments_independent2([0, 0], [2, 0], [0, 1], [2, 1]));
    }

    #[test]
    fn segment_to_box() {
        let (lo, hi) = (p(0, 0), p(1, 1));
        assert_eq!(segment_box_dist2(&p(3, 0), &p(3, 1), &lo, &hi), q(4));
        assert_eq!(segment_box_dist2(&p(-1, 3), &p(3, -1), &lo, &hi), q(0));
        assert_eq!(segment_box_dist2(&p(2, 3), &p(3, 2), &lo, &hi), qf(9, 2));
        assert_eq!(segment_box_dist2(&p(3, 0), &p(0, 3), &p(0, 0), &p(0, 0)), qf(9, 2));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2_below_sqrt(&q(1)), qf(1, 2));
        assert_eq!(pow2_below_sqrt(&q(17)), q(4));
        assert_eq!(pow2_below_sqrt(&qf(1, 100)), qf(1, 16));
    }
}
