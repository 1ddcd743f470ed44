//! Ambient invariant polynomials.

use super::CatalogError;
use crate::algebra::{poly, ExactScalar, MultiPoly};

/// `(ℜ(x+iy)ⁿ, ℑ(x+iy)ⁿ)` in the given pair of variables.
pub fn re_im_power(x: &str, y: &str, n: u32) -> (MultiPoly, MultiPoly) {
    let (vx, vy) = (MultiPoly::var(x), MultiPoly::var(y));
    let mut re = MultiPoly::one();
    let mut im = MultiPoly::zero();
    for _ in 0..n {
        let r = &(&vx * &re) - &(&vy * &im);
        let i = &(&vx * &im) + &(&vy * &re);
        re = r;
        im = i;
    }
    (re, im)
}

/// `X_n = ℜ(Zⁿ)` with `Z = x + iy`.
pub fn x_n(n: u32) -> MultiPoly {
    re_im_power("x", "y", n).0
}

/// `Y_n = ℑ(Zⁿ)`
pub fn y_n(n: u32) -> MultiPoly {
    re_im_power("x", "y", n).1
}

pub fn o3() -> MultiPoly {
    poly("x y z")
}

pub fn o4() -> MultiPoly {
    poly("x^4 + y^4 + z^4")
}

pub fn o6() -> MultiPoly {
    poly("(x^2-y^2)(y^2-z^2)(z^2-x^2)")
}

fn golden_consts() -> (MultiPoly, MultiPoly) {
    let c = ExactScalar::golden();
    let ci = c.inverse().expect("nonzero");
    (MultiPoly::constant(c), MultiPoly::constant(ci))
}

pub fn i6() -> MultiPoly {
    let (c, _) = golden_consts();
    let c2 = &c * &c;
    let sq = |v: &str| MultiPoly::var(v).pow(2);
    let f = |a: &str, b: &str| &(&c2 * &sq(a)) - &sq(b);
    &(&f("x", "y") * &f("y", "z")) * &f("z", "x")
}

pub fn i10() -> MultiPoly {
    let (c, ci) = golden_consts();
    let (c2, ci2) = (&c * &c, &ci * &ci);
    let sq = |v: &str| MultiPoly::var(v).pow(2);
    let f = |a: &str, b: &str| &(&ci2 * &sq(a)) - &(&c2 * &sq(b));
    let lin = poly("(x+y+z)(-x+y+z)(x-y+z)(x+y-z)");
    &(&(&lin * &f("x", "y")) * &f("y", "z")) * &f("z", "x")
}

pub fn i15() -> MultiPoly {
    let (c, ci) = golden_consts();
    let (x, y, z) = (MultiPoly::var("x"), MultiPoly::var("y"), MultiPoly::var("z"));
    // Each block is (a·u + b·v + w) over the four sign patterns (+++), (−++), (+−+), (++−).
    let block = |a: &MultiPoly, u: &MultiPoly, b: &MultiPoly, v: &MultiPoly, w: &MultiPoly, cw: &MultiPoly| {
        let (au, bv, ww) = (a * u, b * v, cw * w);
        let s = |p: i32, q: i32, r: i32| {
            let t = |k: i32, m: &MultiPoly| if k > 0 { m.clone() } else { -m };
            &(&t(p, &au) + &t(q, &bv)) + &t(r, &ww)
        };
        &(&(&s(1, 1, 1) * &s(-1, 1, 1)) * &s(1, -1, 1)) * &s(1, 1, -1)
    };
    let one = MultiPoly::one();
    let b1 = block(&c, &x, &ci, &y, &z, &one);
    let b2 = block(&one, &x, &c, &y, &z, &ci);
    let b3 = block(&ci, &x, &one, &y, &z, &c);
    &(&(&o3() * &b1) * &b2) * &b3
}

/// Building blocks of the 4-dimensional family: `z_j^p = X_j + iY_j`, `R_j = |z_j|²`.
pub struct CornulierBlocks {
    pub x1: MultiPoly,
    pub y1: MultiPoly,
    pub x2: MultiPoly,
    pub y2: MultiPoly,
    pub r1: MultiPoly,
    pub r2: MultiPoly,
}

pub fn cornulier_blocks(p: u32) -> CornulierBlocks {
    let (x1, y1) = re_im_power("x1", "x2", p);
    let (x2, y2) = re_im_power("x3", "x4", p);
    CornulierBlocks { x1, y1, x2, y2, r1: poly("x1^2 + x2^2"), r2: poly("x3^2 + x4^2") }
}

/// `θ₁..θ₃` (index 1..=3) and `η₁..η₇` (index 4..=10) of the 4-dimensional family.
pub fn cornulier_invariant(p: u32, which: &str) -> Result<MultiPoly, CatalogError> {
    let b = cornulier_blocks(p);
    let dx = &b.x1 - &b.x2;
    let dy = &b.y1 - &b.y2;
    let dr = &b.r1 - &b.r2;
    let eta3 = &dx * &dr;
    let eta4 = &b.y1 * &b.y2;
    Ok(match which {
        "theta1" => &b.x1 + &b.x2,
        "theta2" => &b.x1 * &b.x2,
        "theta3" => &b.r1 * &b.r2,
        "eta1" => &b.y1 + &b.y2,
        "eta2" => &dy * &dr,
        "eta3" => eta3,
        "eta4" => eta4,
        "eta5" => &dx * &dy,
        "eta6" => &(&(&b.x1 * &b.y1) - &(&b.x2 * &b.y2)) * &dr,
        "eta7" => &eta3 * &eta4,
        other => return Err(CatalogError::UnknownInvariant(other.to_string())),
    })
}

/// Ambient polynomial for an invariant label.
///
/// Labels: `z`, `X`, `Y` (with `n`), `O3`, `O4`, `O6`, `I6`, `I10`, `I15`,
/// `theta1..3` and `eta1..7` (with `n = p`, default 3).
pub fn build_invariant(name: &str, n: Option<u32>) -> Result<MultiPoly, CatalogError> {
    let need = || n.ok_or_else(|| CatalogError::MissingParameter(name.to_string()));
    match name {
        "z" => Ok(MultiPoly::var("z")),
        "X" | "X_n" | "Xn" => Ok(x_n(need()?)),
        "Y" | "Y_n" | "Yn" => Ok(y_n(need()?)),
        "O3" => Ok(o3()),
        "O4" => Ok(o4()),
        "O6" => Ok(o6()),
        "I6" => Ok(i6()),
        "I10" => Ok(i10()),
        "I15" => Ok(i15()),
        s if s.starts_with("theta") || s.starts_with("eta") => cornulier_invariant(n.unwrap_or(3), s),
        s => {
            // X3, Y5, ...
            let (head, tail) = s.split_at(1);
            match (head, tail.parse::<u32>()) {
                ("X", Ok(k)) => Ok(x_n(k)),
                ("Y", Ok(k)) => Ok(y_n(k)),
                _ => Err(CatalogError::UnknownInvariant(s.to_string())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphereops::Sphere;

    #[test]
    fn cyclic_blocks() {
        assert_eq!(x_n(2), poly("x^2 - y^2"));
        assert_eq!(y_n(3), poly("3 x^2 y - y^3"));
        let s = Sphere::s2();
        for n in 1..6 {
            let lhs = &x_n(n).pow(2) + &y_n(n).pow(2);
            assert_eq!(s.reduce(&lhs), s.reduce(&poly("1-z^2").pow(n)));
        }
    }

    #[test]
    fn polyhedral_blocks() {
        assert_eq!(build_invariant("O6", None).unwrap(), poly("(x^2-y^2)(y^2-z^2)(z^2-x^2)"));
        assert_eq!(i15().total_degree(), 15);
        assert_eq!(i15().homogeneous_degree(), Some(15));
        assert_eq!(i10().homogeneous_degree(), Some(10));
        assert!(build_invariant("Q7", None).is_err());
    }
}
