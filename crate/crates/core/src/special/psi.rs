//! psi(z) = log(2 xi(s)) with s = (1 + sqrt(1 + 4z)) / 2, so that s^2 - s = z.

use rug::Rational;

use super::{escalate_by, xi_real_at, EvalRequest};
use crate::ball::{self, RealBall};
use crate::error::{Error, Result};

/// The root `s >= 1/2` of `s^2 - s = z`, for `z > -1/4`.
pub fn s_of_z(z: &RealBall) -> Result<RealBall> {
    let quarter = Rational::from((-1, 4));
    let lo = z.lower();
    if !(lo > quarter) {
        return Err(Error::DomainViolation(format!(
            "s(z) needs z > -1/4, enclosure reaches {}",
            lo.to_f64()
        )));
    }
    let disc = z.mul_2si(2).add_i64(1);
    Ok(disc.sqrt()?.add_i64(1).mul_2si(-1))
}

/// Certified enclosure of psi(z).
pub fn psi(z: &RealBall, req: &EvalRequest) -> Result<RealBall> {
    check_domain(z)?;
    escalate_by(
        req,
        |v: &RealBall| v.rad().clone(),
        |p| psi_at(&z.set_prec(p.max(z.prec())), p),
    )
}

/// psi(z) at a fixed working precision.
pub fn psi_at(z: &RealBall, prec: u32) -> Result<RealBall> {
    check_domain(z)?;
    if z.is_exact() && z.mid().is_zero() {
        return Ok(RealBall::zero(prec));
    }
    let s = s_of_z(z)?;
    let two_xi = xi_real_at(&s, prec)?.mul_2si(1);
    if !two_xi.is_positive() {
        return Err(Error::DomainViolation("2 xi(s) is not certified positive".into()));
    }
    two_xi.ln()
}

fn check_domain(z: &RealBall) -> Result<()> {
    // upper end of the stated domain: 4 pi^2
    let four_pi2 = ball::pi(64).sqr().mul_2si(2);
    if !(z.upper() < four_pi2.lower()) {
        return Err(Error::DomainViolation("psi needs z < 4 pi^2".into()));
    }
    s_of_z(z).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::ComplexBall;
    use crate::special::{gamma_at, zeta_at};

    const P: u32 = 192;

    #[test]
    fn s_of_z_fixed_points() {
        for (z, s) in [(0, 1), (2, 2), (6, 3)] {
            let v = s_of_z(&RealBall::from_i64(z, P)).unwrap();
            assert!(v.contains_i64(s), "z = {z}");
        }
    }

    #[test]
    fn s_of_z_rejects_left_of_quarter() {
        assert!(s_of_z(&RealBall::from_f64(-0.25, P)).is_err());
        assert!(s_of_z(&RealBall::from_f64(-0.3, P)).is_err());
        assert!(s_of_z(&RealBall::from_f64(-0.2, P)).is_ok());
    }

    #[test]
    fn psi_zero_is_exact() {
        let v = psi_at(&RealBall::zero(P), P).unwrap();
        assert!(v.is_exact() && v.mid().is_zero());
    }

    #[test]
    fn psi_two_matches_direct_xi() {
        // 2 xi(2) = 2 * (1/2) * 2 * 1 * pi^-1 * Gamma(1) * zeta(2) = 2 zeta(2) / pi
        let v = psi_at(&RealBall::from_i64(2, P), P).unwrap();
        let z2 = zeta_at(&ComplexBall::from_i64(2, P), P).unwrap().re;
        let g1 = gamma_at(&RealBall::one(P), P).unwrap();
        let direct = (&(&z2 * &g1).mul_2si(1) / &ball::pi(P)).ln().unwrap();
        assert!(v.overlaps(&direct));
        assert!(v.rad().to_f64() < 1e-45);
    }

    #[test]
    fn psi_small_argument_is_lambda_z() {
        // psi(z) = lambda z + O(z^2)
        let z = RealBall::from_decimal("1e-12", P).unwrap();
        let v = psi_at(&z, P).unwrap();
        let ratio = (&v / &z).to_f64();
        assert!((ratio - 0.0230957089661).abs() < 1e-10, "{ratio}");
    }

    #[test]
    fn domain_upper_end() {
        assert!(psi_at(&RealBall::from_f64(40.0, P), P).is_err());
        assert!(psi_at(&RealBall::from_f64(39.0, P), P).is_ok());
    }
}
