use crate::error::{Error, Result};
use crate::mat::{abs_power, opnorm, Matrix, QValue};

/// Exponent split `α ∈ [0, 1]` between `|T|` and `|T*|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(AlphaParam(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The four positive blocks of the product bounds for `ATB + CSD`:
///
/// ```text
/// P1 = B*|T|^{2α}B     P2 = A|T*|^{2(1-α)}A*
/// P3 = D*|S|^{2α}D     P4 = C|S*|^{2(1-α)}C*
/// ```
#[derive(Clone, Debug)]
pub struct ProductTerms {
    pub p1: Matrix,
    pub p2: Matrix,
    pub p3: Matrix,
    pub p4: Matrix,
}

impl ProductTerms {
    /// `A` is `n x k`, `T` is `k x k`, `B` is `k x n`; `C` is `n x l`, `S` is
    /// `l x l`, `D` is `l x n`.
    pub fn new(
        a: &Matrix,
        b: &Matrix,
        c: &Matrix,
        d: &Matrix,
        s: &Matrix,
        t: &Matrix,
        alpha: AlphaParam,
    ) -> Result<Self> {
        let n = a.rows();
        let k = t.square_dim().map_err(|_| mismatch("T must be square"))?;
        let l = s.square_dim().map_err(|_| mismatch("S must be square"))?;
        expect_shape("A", a, n, k)?;
        expect_shape("B", b, k, n)?;
        expect_shape("C", c, n, l)?;
        expect_shape("D", d, l, n)?;
        let al = alpha.value();
        let p1 = &(&b.adjoint() * &abs_power(t, 2.0 * al)?) * b;
        let p2 = &(a * &abs_power(&t.adjoint(), 2.0 * (1.0 - al))?) * &a.adjoint();
        let p3 = &(&d.adjoint() * &abs_power(s, 2.0 * al)?) * d;
        let p4 = &(c * &abs_power(&s.adjoint(), 2.0 * (1.0 - al))?) * &c.adjoint();
        Ok(ProductTerms { p1, p2, p3, p4 })
    }

    /// The composed operator `ATB + CSD`.
    pub fn operator(
        a: &Matrix,
        b: &Matrix,
        c: &Matrix,
        d: &Matrix,
        s: &Matrix,
        t: &Matrix,
    ) -> Result<Matrix> {
        (&(a * t) * b).try_add(&(&(c * s) * d))
    }
}

fn expect_shape(name: &str, m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(mismatch(&format!(
            "{name} must be {rows}x{cols}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn mismatch(msg: &str) -> Error {
    Error::ShapeMismatch(msg.to_string())
}

/// q-dependent bound on `ω_q(ATB + CSD)`:
///
/// ```text
/// q/2 ‖P1 + P2 + P3 + P4‖ + (p + √(2qp)) (√(‖P1‖‖P2‖) + √(‖P3‖‖P4‖))
/// ```
#[allow(clippy::too_many_arguments)]
pub fn eval_product_bound_q(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &Matrix,
    s: &Matrix,
    t: &Matrix,
    alpha: AlphaParam,
    q: QValue,
) -> Result<f64> {
    let pt = ProductTerms::new(a, b, c, d, s, t, alpha)?;
    let sum = &(&pt.p1 + &pt.p2) + &(&pt.p3 + &pt.p4);
    let (qq, p) = (q.q(), q.p());
    let first = opnorm(&pt.p1)? * opnorm(&pt.p2)?;
    let second = opnorm(&pt.p3)? * opnorm(&pt.p4)?;
    Ok(qq / 2.0 * opnorm(&sum)? + (p + (2.0 * qq * p).sqrt()) * (first.sqrt() + second.sqrt()))
}

/// q-free bound on `ω_q(ATB + CSD)`: `½(‖P2 + P4‖ + ‖P1 + P3‖)`.
pub fn eval_product_bound_qfree(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &Matrix,
    s: &Matrix,
    t: &Matrix,
    alpha: AlphaParam,
) -> Result<f64> {
    let pt = ProductTerms::new(a, b, c, d, s, t, alpha)?;
    Ok((opnorm(&(&pt.p2 + &pt.p4))? + opnorm(&(&pt.p1 + &pt.p3))?) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{abs_value, random_matrix, Ensemble};

    fn qv(q: f64) -> QValue {
        QValue::new(q).unwrap()
    }

    fn alphas() -> Vec<AlphaParam> {
        [0.0, 0.25, 0.5, 0.75, 1.0]
            .iter()
            .map(|&a| AlphaParam::new(a).unwrap())
            .collect()
    }

    fn rnd(n: usize, seed: u64) -> Matrix {
        random_matrix(n, Ensemble::General, seed).unwrap()
    }

    fn coefficient(q: QValue) -> f64 {
        q.p() + (2.0 * q.q() * q.p()).sqrt()
    }

    #[test]
    fn alpha_range() {
        assert!(AlphaParam::new(0.0).is_ok() && AlphaParam::new(1.0).is_ok());
        assert_eq!(AlphaParam::new(1.5), Err(Error::AlphaOutOfRange(1.5)));
        assert!(AlphaParam::new(f64::NAN).is_err());
    }

    #[test]
    fn zeros_give_zero() {
        let z = Matrix::zeros(2, 2);
        for al in alphas() {
            assert_eq!(
                eval_product_bound_q(&z, &z, &z, &z, &z, &z, al, qv(0.4)).unwrap(),
                0.0
            );
            assert_eq!(
                eval_product_bound_qfree(&z, &z, &z, &z, &z, &z, al).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn shape_checks() {
        let a = Matrix::zeros(2, 3);
        let t = Matrix::identity(3);
        let b = Matrix::zeros(3, 2);
        let c = Matrix::zeros(2, 1);
        let s = Matrix::identity(1);
        let d = Matrix::zeros(1, 2);
        let al = AlphaParam::new(0.5).unwrap();
        assert!(eval_product_bound_q(&a, &b, &c, &d, &s, &t, al, qv(0.5)).is_ok());
        assert!(matches!(
            eval_product_bound_q(&a, &b.adjoint(), &c, &d, &s, &t, al, qv(0.5)),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            eval_product_bound_qfree(&a, &b, &c, &d, &Matrix::zeros(1, 2), &t, al),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn remark_single_operator() {
        // T = B = I, S = C = D = 0
        let z = Matrix::zeros(3, 3);
        let i = Matrix::identity(3);
        for seed in 0..10 {
            let a = rnd(3, seed);
            let expect_base = opnorm(&(&(&a * &a.adjoint()) + &i)).unwrap();
            for al in alphas() {
                for k in 0..=4 {
                    let q = qv(k as f64 / 4.0);
                    let v = eval_product_bound_q(&a, &i, &z, &z, &z, &i, al, q).unwrap();
                    let expect = q.q() / 2.0 * expect_base + coefficient(q) * opnorm(&a).unwrap();
                    assert!((v - expect).abs() < 1e-12, "{v} vs {expect}");
                }
            }
            // A = B = I, α = 1/2
            let t = a;
            let half = AlphaParam::new(0.5).unwrap();
            let abs_sum = &abs_value(&t).unwrap() + &abs_value(&t.adjoint()).unwrap();
            for k in 0..=4 {
                let q = qv(k as f64 / 4.0);
                let v = eval_product_bound_q(&i, &i, &z, &z, &z, &t, half, q).unwrap();
                let expect =
                    q.q() / 2.0 * opnorm(&abs_sum).unwrap() + coefficient(q) * opnorm(&t).unwrap();
                assert!((v - expect).abs() < 1e-12);
            }
            assert!(
                (eval_product_bound_qfree(&i, &i, &z, &z, &z, &t, half).unwrap()
                    - opnorm(&t).unwrap())
                .abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn remark_product_of_two() {
        // T = I, S = C = D = 0: the positive blocks are B*B and AA*
        let z = Matrix::zeros(2, 2);
        let i = Matrix::identity(2);
        for seed in 0..20 {
            let (a, b) = (rnd(2, seed), rnd(2, seed + 1000));
            let aa = &a * &a.adjoint();
            let bb = &b.adjoint() * &b;
            for al in alphas() {
                for k in 0..=4 {
                    let q = qv(k as f64 / 4.0);
                    let v = eval_product_bound_q(&a, &b, &z, &z, &z, &i, al, q).unwrap();
                    let expect = q.q() / 2.0 * opnorm(&(&aa + &bb)).unwrap()
                        + coefficient(q) * opnorm(&a).unwrap() * opnorm(&b).unwrap();
                    assert!((v - expect).abs() < 1e-12);
                }
                let v = eval_product_bound_qfree(&a, &b, &z, &z, &z, &i, al).unwrap();
                let expect = (opnorm(&aa).unwrap() + opnorm(&bb).unwrap()) / 2.0;
                assert!((v - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn remark_anticommutator() {
        // T = S = I, C = B, D = A: ATB + CSD = AB + BA
        let i = Matrix::identity(2);
        for seed in 0..20 {
            let (a, b) = (rnd(2, seed), rnd(2, seed + 500));
            let sum = &(&(&a * &a.adjoint()) + &(&b.adjoint() * &b))
                + &(&(&a.adjoint() * &a) + &(&b * &b.adjoint()));
            let (na, nb) = (opnorm(&a).unwrap(), opnorm(&b).unwrap());
            for al in alphas() {
                for k in 0..=4 {
                    let q = qv(k as f64 / 4.0);
                    let v = eval_product_bound_q(&a, &b, &b, &a, &i, &i, al, q).unwrap();
                    let expect =
                        q.q() / 2.0 * opnorm(&sum).unwrap() + coefficient(q) * 2.0 * na * nb;
                    assert!((v - expect).abs() < 1e-12);
                }
            }
            let op = ProductTerms::operator(&a, &b, &b, &a, &i, &i).unwrap();
            assert!(op.max_abs_diff(&(&(&a * &b) + &(&b * &a))) < 1e-14);
        }
    }
}
