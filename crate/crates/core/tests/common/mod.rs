//! Oracles shared by the integration tests. They recompute quantities from
//! the raw images without going through the library's own code paths.

#![allow(dead_code)]

use num_rational::Ratio;
use otx_core::Pattern;

pub type Q = Ratio<i128>;

/// All cyclic permutations of `1..=q`, built from orbit orderings that
/// start at 1.
pub fn cyclic_images(q: usize) -> Vec<Vec<usize>> {
    fn rec(order: &mut Vec<usize>, rest: &mut Vec<usize>, q: usize, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            let mut images = vec![0; q];
            for k in 0..q {
                images[order[k] - 1] = order[(k + 1) % q];
            }
            out.push(images);
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            order.push(v);
            rec(order, rest, q, out);
            order.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![1], &mut (2..=q).collect(), q, &mut out);
    out
}

pub fn cyclic_patterns(q: usize) -> Vec<Pattern> {
    cyclic_images(q)
        .into_iter()
        .map(|v| Pattern::new(v).unwrap())
        .collect()
}

/// Half the number of points whose displacement changes sign at the next
/// step, together with the period.
pub fn sign_switch_pair(images: &[usize]) -> (usize, usize) {
    let f = |i: usize| images[i - 1];
    let switches = (1..=images.len())
        .filter(|&i| (f(i) > i) != (f(f(i)) > f(i)))
        .count();
    (switches / 2, images.len())
}

/// Number of interior turning points of the images.
pub fn turns(images: &[usize]) -> usize {
    images
        .windows(3)
        .filter(|w| (w[1] > w[0]) != (w[2] > w[1]))
        .count()
}

/// Fixed points of the connect-the-dots map, solved segment by segment.
pub fn fixed_points(images: &[usize]) -> Vec<Q> {
    let mut out = Vec::new();
    for i in 1..images.len() {
        let (x0, y0) = (i as i128, images[i - 1] as i128);
        let y1 = images[i] as i128;
        let (d0, d1) = (y0 - x0, y1 - x0 - 1);
        if (d0 > 0) != (d1 > 0) {
            // y0 + (y1 - y0)(x - x0) = x
            out.push(Q::new(y0 - (y1 - y0) * x0, 1 - (y1 - y0)));
        }
    }
    out
}

/// Evaluates the connect-the-dots map at `x` by linear interpolation.
pub fn eval(images: &[usize], x: &Q) -> Q {
    let i = (x.floor().to_integer() as usize).clamp(1, images.len() - 1);
    let (y0, y1) = (images[i - 1] as i128, images[i] as i128);
    Q::from_integer(y0) + (x - Q::from_integer(i as i128)) * (y1 - y0)
}

/// Green test straight from the definition: unique fixed point, points that
/// stay on their side form an increasing set, the others a decreasing one.
pub fn is_green(images: &[usize]) -> bool {
    let fixed = fixed_points(images);
    let [a] = fixed.as_slice() else {
        return false;
    };
    let side = |i: usize| Q::from_integer(i as i128) < *a;
    let q = images.len();
    let mut greens = Vec::new();
    let mut blacks = Vec::new();
    for i in 1..=q {
        if side(i) == side(images[i - 1]) {
            greens.push(images[i - 1]);
        } else {
            blacks.push(images[i - 1]);
        }
    }
    greens.windows(2).all(|w| w[0] < w[1]) && blacks.windows(2).all(|w| w[0] > w[1])
}

/// Sharkovsky position: smaller keys come first in the ordering.
pub fn sharkovsky_key(n: u64) -> (u32, i64) {
    let k = n.trailing_zeros();
    let odd = n >> k;
    if odd > 1 {
        (k, odd as i64)
    } else {
        (u32::MAX, -(k as i64))
    }
}
