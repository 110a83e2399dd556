use super::TransformError;
use crate::ec::{Curve, ExactField, Point};

/// y^2 = a x^3 + b x^2 + c x + d.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicModel<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

/// y^2 + a y = b x^3 + c x^2 + d x + e.
#[derive(Clone, Debug, PartialEq)]
pub struct LongCubicModel<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub e: F,
}

/// Target curve plus the affine map X = sx*x + tx, Y = sy*y + ty.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicReduction<F> {
    pub curve: Curve<F>,
    pub singular: bool,
    pub sx: F,
    pub tx: F,
    pub sy: F,
    pub ty: F,
}

impl<F: ExactField> CubicReduction<F> {
    pub fn map(&self, x: &F, y: &F) -> Point<F> {
        Point::Affine(self.sx.mul(x).add(&self.tx), self.sy.mul(y).add(&self.ty))
    }

    pub fn map_x(&self, x: &F) -> F {
        self.sx.mul(x).add(&self.tx)
    }
}

fn k<F: ExactField>(n: i64) -> F {
    F::from_i64(n)
}

/// Y^2 = X^3 + 27(3ac - b^2) X + 27(27a^2 d - 9abc + 2b^3), (X, Y) = (9a x + 3b, 27a y).
pub fn cubic_to_weierstrass<F: ExactField>(m: &CubicModel<F>) -> Result<CubicReduction<F>, TransformError> {
    if m.a.is_zero_el() {
        return Err(TransformError::NotCubic);
    }
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    let aa = a.mul(c).scale_i(3).sub(&b.square()).scale_i(27);
    let bb = a.square().mul(d).scale_i(27).sub(&a.mul(b).mul(c).scale_i(9)).add(&b.square().mul(b).scale_i(2)).scale_i(27);
    let curve = Curve::new_unchecked(aa, bb);
    let singular = curve.discriminant().is_zero_el();
    Ok(CubicReduction { curve, singular, sx: a.scale_i(9), tx: b.scale_i(3), sy: a.scale_i(27), ty: k(0) })
}

/// Y^2 = X^3 - 432(c^2 - 3bd) X + 432(27a^2 b^2 + 8c^3 - 36bcd + 108 b^2 e),
/// (X, Y) = (12(c + 3b x), 108 b (a + 2y)).
pub fn long_cubic_to_weierstrass<F: ExactField>(m: &LongCubicModel<F>) -> Result<CubicReduction<F>, TransformError> {
    if m.b.is_zero_el() {
        return Err(TransformError::NotCubic);
    }
    let (a, b, c, d, e) = (&m.a, &m.b, &m.c, &m.d, &m.e);
    let aa = c.square().sub(&b.mul(d).scale_i(3)).scale_i(-432);
    let b2 = b.square();
    let bb = a
        .square()
        .mul(&b2)
        .scale_i(27)
        .add(&c.square().mul(c).scale_i(8))
        .sub(&b.mul(c).mul(d).scale_i(36))
        .add(&b2.mul(e).scale_i(108))
        .scale_i(432);
    let curve = Curve::new_unchecked(aa, bb);
    let singular = curve.discriminant().is_zero_el();
    Ok(CubicReduction {
        curve,
        singular,
        sx: b.scale_i(36),
        tx: c.scale_i(12),
        sy: b.scale_i(216),
        ty: a.mul(b).scale_i(108),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::int;
    use crate::arith::{MultiPoly, Rat};
    use proptest::prelude::*;

    #[test]
    fn pure_cube() {
        let r = cubic_to_weierstrass(&CubicModel { a: int(1), b: int(0), c: int(0), d: int(0) }).unwrap();
        assert!(r.singular);
        assert_eq!(r.map(&int(1), &int(1)), Point::Affine(int(9), int(27)));
        let z = CubicModel { a: int(0), b: int(0), c: int(0), d: int(1) };
        assert_eq!(cubic_to_weierstrass(&z), Err(TransformError::NotCubic));
        let l = long_cubic_to_weierstrass(&LongCubicModel { a: int(0), b: int(1), c: int(0), d: int(0), e: int(0) }).unwrap();
        assert!(l.singular);
        assert_eq!(l.map(&int(1), &int(1)), Point::Affine(int(36), int(216)));
    }

    #[test]
    fn s1_instance_has_zero_a() {
        let m = CubicModel { a: int(2651880), b: int(7955640), c: int(7955640), d: int(90601) };
        let r = cubic_to_weierstrass(&m).unwrap();
        assert_eq!(r.curve.a, int(0));
        assert!(!r.singular);
    }

    // Substituting the map into the target gives (const) * (source equation).
    #[test]
    fn symbolic_identities() {
        let vars = ["a", "b", "c", "d", "e", "x", "y"];
        let v = MultiPoly::vars_of(&vars);
        let (a, b, c, d, e, x, y) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6]);
        let kk = |n: i64| MultiPoly::constant(&vars, int(n));
        // short flavor: source y^2 - (b x^3 + c x^2 + d x + e) with a as leading
        let src = &(y * y) - &(&(&(&(&(a * x) * x) * x) + &(&(b * x) * x)) + &(&(c * x) + d));
        let m = CubicModel { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone() };
        let (xx, yy) = (&(&kk(9) * &(a * x)) + &(&kk(3) * b), &kk(27) * &(a * y));
        let aa = &kk(27) * &(&(&kk(3) * &(a * c)) - &(b * b));
        let bb = &kk(27) * &(&(&(&kk(27) * &(&(a * a) * d)) - &(&kk(9) * &(&(a * b) * c))) + &(&kk(2) * &(&(b * b) * b)));
        let target = &(&yy * &yy) - &(&(&(&(&xx * &xx) * &xx) + &(&aa * &xx)) + &bb);
        assert_eq!(target, &(&kk(729) * &(a * a)) * &src);
        let _ = m;

        // long flavor
        let src = &(&(y * y) + &(a * y)) - &(&(&(&(&(b * x) * x) * x) + &(&(c * x) * x)) + &(&(d * x) + e));
        let xx = &kk(12) * &(c + &(&kk(3) * &(b * x)));
        let yy = &kk(108) * &(b * &(a + &(&kk(2) * y)));
        let aa = &kk(-432) * &(&(c * c) - &(&kk(3) * &(b * d)));
        let bb = &kk(432)
            * &(&(&(&(&kk(27) * &(&(a * a) * &(b * b))) + &(&kk(8) * &(&(c * c) * c))) - &(&kk(36) * &(&(b * c) * d)))
                + &(&kk(108) * &(&(b * b) * e)));
        let target = &(&yy * &yy) - &(&(&(&(&xx * &xx) * &xx) + &(&aa * &xx)) + &bb);
        assert_eq!(target, &(&kk(46656) * &(b * b)) * &src);
    }

    #[test]
    fn design_condition_gives_pure_form() {
        // c^2 = 3bd
        let m = LongCubicModel { a: int(1), b: int(3), c: int(6), d: int(4), e: int(5) };
        let r = long_cubic_to_weierstrass(&m).unwrap();
        assert_eq!(r.curve.a, int(0));
    }

    proptest! {
        #[test]
        fn x_progressions_preserved(a in 1i64..50, b in -50i64..50, x0 in -20i64..20, h in 1i64..9) {
            let m = CubicModel { a: int(a), b: int(b), c: int(3), d: int(1) };
            let r = cubic_to_weierstrass(&m).unwrap();
            let xs: Vec<Rat> = (0..4).map(|i| r.map_x(&int(x0 + i * h))).collect();
            for w in xs.windows(2) {
                prop_assert_eq!(&w[1] - &w[0], int(9 * a * h));
            }
        }
    }
}
