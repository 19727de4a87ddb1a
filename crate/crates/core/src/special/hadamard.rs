//! Truncated Hadamard product for xi over a zero catalog.
//!
//! With `w = s^2 - s`, each critical-line zero contributes `1 + w lambda_m`
//! and each off-line quadruplet `1 + mu_k w + nu_k w^2`.

use crate::ball::ComplexBall;
use crate::error::{Error, Result};
use crate::sums::{lambda_term, mu_nu_terms};
use crate::zeros::ZeroCatalog;

/// `1/2` times the product over the first `n_terms` catalog entries, in
/// ascending ordinate order.
pub fn xi_hadamard_partial(s: &ComplexBall, catalog: &ZeroCatalog, n_terms: usize) -> Result<ComplexBall> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    if n_terms > catalog.len() {
        return Err(Error::InvalidArgument(format!(
            "{n_terms} terms requested from a catalog of {}",
            catalog.len()
        )));
    }
    let prec = s.prec();
    let w = &s.sqr() - s;
    let w2 = w.sqr();
    let mut acc = ComplexBall::one(prec).mul_2si(-1);
    for e in &catalog.entries()[..n_terms] {
        let beta = e.beta.set_prec(prec);
        let factor = if e.on_line() {
            w.mul_real(&lambda_term(&beta)?).add_i64(1)
        } else {
            let t = mu_nu_terms(&e.delta.set_prec(prec), &beta)?;
            (&w.mul_real(&t.mu) + &w2.mul_real(&t.nu)).add_i64(1)
        };
        acc = &acc * &factor;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{Mag, RealBall};
    use crate::special::xi_at;
    use crate::zeros::{parse_zero_table, ZeroEntry, ZeroSource};
    use rug::Rational;

    fn catalog() -> ZeroCatalog {
        parse_zero_table(
            "14.134725142\n21.022039639\n25.010857580\n".as_bytes(),
            &Mag::from_f64(5e-10),
            "t",
        )
        .unwrap()
    }

    #[test]
    fn half_at_zero_and_one() {
        let half = Rational::from((1, 2));
        for v in [0, 1] {
            let x = xi_hadamard_partial(&ComplexBall::from_i64(v, 128), &catalog(), 3).unwrap();
            assert!(x.re.contains_rational(&half) && x.re.is_exact());
        }
    }

    #[test]
    fn off_line_factor_matches_four_linear_factors() {
        // (1 - s/rho)(1 - s/(1-rho)) (conjugates likewise) for rho = 1/2 + delta + i beta
        let p = 128;
        let (delta, beta) = (0.125, 30.0);
        let entry = ZeroEntry {
            index: 1,
            beta: RealBall::from_f64(beta, p),
            delta: RealBall::from_f64(delta, p),
            source: ZeroSource::Table,
        };
        let cat = ZeroCatalog::new(vec![entry], Mag::zero(), "t").unwrap();
        let s = ComplexBall::new(RealBall::from_f64(0.3, p), RealBall::from_f64(1.7, p));
        let got = xi_hadamard_partial(&s, &cat, 1).unwrap();
        let rho = ComplexBall::new(RealBall::from_f64(0.5 + delta, p), RealBall::from_f64(beta, p));
        let one_minus = (-&rho).add_i64(1);
        let mut expect = ComplexBall::one(p).mul_2si(-1);
        for r in [rho.clone(), rho.conj(), one_minus.clone(), one_minus.conj()] {
            expect = &expect * &(-&s.checked_div(&r).unwrap()).add_i64(1);
        }
        assert!(got.overlaps(&expect));
    }

    #[test]
    fn few_factors_approach_xi_at_two() {
        let s = ComplexBall::from_i64(2, 128);
        let direct = xi_at(&s, 128).unwrap().re.to_f64();
        let partial = xi_hadamard_partial(&s, &catalog(), 3).unwrap().re.to_f64();
        // three factors already land within a few percent
        assert!(partial < direct && (direct - partial) / direct < 0.05);
    }
}
