//! psi(z) against truncations of its zero-product expansion
//! sum_m log(1 + lambda_m z) (quadruplets contribute log(1 + mu z + nu z^2)).

use rug::Rational;

use crate::ball::{self, RealBall};
use crate::error::{Error, Result};
use crate::special::psi_at;
use crate::sums::{lambda_term, mu_nu_terms};
use crate::zeros::ZeroCatalog;

#[derive(Clone, Debug)]
pub struct SeriesPoint {
    /// Number of catalog entries used.
    pub n: usize,
    pub truncated: RealBall,
    /// `psi(z) - truncated`.
    pub residual: RealBall,
}

/// Residuals of the truncated expansion for each `n` in `n_list`.
pub fn series_consistency(
    z: &Rational,
    catalog: &ZeroCatalog,
    n_list: &[usize],
    prec: u32,
) -> Result<Vec<SeriesPoint>> {
    ball::check_prec(prec)?;
    let zb = RealBall::from_rational(z, prec + 64);
    let radius = (ball::pi(64).sqr().mul_i64(4)).recip();
    if !zb.abs().upper().lt(&radius.lower()) {
        return Err(Error::DomainViolation("|z| must be below 1/(4 pi^2)".into()));
    }
    let psi = psi_at(&zb, prec)?;
    let mut wanted: Vec<usize> = n_list.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    if let Some(&n) = wanted.last() {
        if n > catalog.len() {
            return Err(Error::InvalidArgument(format!(
                "truncation {n} exceeds the catalog size {}",
                catalog.len()
            )));
        }
    }

    let mut out = Vec::with_capacity(wanted.len());
    let mut acc = RealBall::zero(prec);
    let mut used = 0usize;
    for &n in &wanted {
        for e in &catalog.entries()[used..n] {
            let arg = if e.on_line() {
                lambda_term(&e.beta.set_prec(prec))?.mul_ball(&zb).add_i64(1)
            } else {
                let mn = mu_nu_terms(&e.delta.set_prec(prec), &e.beta.set_prec(prec))?;
                let zz = zb.sqr();
                (&mn.mu.mul_ball(&zb) + &mn.nu.mul_ball(&zz)).add_i64(1)
            };
            acc = &acc + &arg.ln()?;
        }
        used = n;
        out.push(SeriesPoint {
            n,
            residual: &psi - &acc,
            truncated: acc.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Mag;
    use crate::zeros::{parse_zero_table, DEFAULT_TABLE_ACCURACY};

    const FIRST_ZEROS: &str = "14.134725142\n21.022039639\n25.010857580\n30.424876126\n32.935061588\n";

    #[test]
    fn residual_shrinks_and_stays_positive() {
        let acc = Mag::from_f64(DEFAULT_TABLE_ACCURACY);
        let cat = parse_zero_table(FIRST_ZEROS.as_bytes(), &acc, "test").unwrap();
        let z = Rational::from((1, 100));
        let pts = series_consistency(&z, &cat, &[1, 3, 5], 128).unwrap();
        assert_eq!(pts.len(), 3);
        for w in pts.windows(2) {
            assert!(w[1].residual.upper() < w[0].residual.lower());
        }
        assert!(pts[2].residual.is_positive());
    }

    #[test]
    fn radius_enforced() {
        let acc = Mag::from_f64(DEFAULT_TABLE_ACCURACY);
        let cat = parse_zero_table(FIRST_ZEROS.as_bytes(), &acc, "test").unwrap();
        assert!(series_consistency(&Rational::from((1, 30)), &cat, &[1], 128).is_err());
        assert!(series_consistency(&Rational::from((1, 100)), &cat, &[9], 128).is_err());
    }
}
