use super::ZeroCatalog;
use crate::ball::{self, RealBall};
use crate::error::{Error, Result};

/// Tabulated count below `T` next to the smooth counting term.
#[derive(Clone, Debug)]
pub struct CountCheck {
    pub counted: usize,
    pub main_term: RealBall,
    /// `C log T`
    pub allowed: RealBall,
    /// `|counted - main_term| <= C log T`, certified.
    pub within_slack: bool,
}

/// `(T/2pi) log(T/2pi) - T/2pi`.
pub fn main_term(t: &RealBall) -> Result<RealBall> {
    let x = t / &ball::pi(t.prec()).mul_2si(1);
    Ok(&(&x * &x.ln()?) - &x)
}

/// Count ordinates below `T` and compare with [`main_term`] under slack `C`.
pub fn count_vs_formula(catalog: &ZeroCatalog, t: &RealBall, slack: f64) -> Result<CountCheck> {
    let cutoff = catalog.cutoff()?;
    if t.lower() > cutoff.upper() {
        return Err(Error::TBeyondCatalog {
            requested: t.mid_string(Some(12)),
            cutoff: cutoff.mid_string(Some(12)),
        });
    }
    let entries = catalog.entries();
    let counted = entries.partition_point(|e| e.beta.mid() < t.mid());
    let main = main_term(t)?;
    let allowed = &t.ln()? * &RealBall::from_f64(slack, t.prec());
    let dev = (&RealBall::from_i64(counted as i64, t.prec()) - &main).abs();
    let within_slack = dev.upper() <= allowed.lower();
    Ok(CountCheck {
        counted,
        main_term: main,
        allowed,
        within_slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Mag;
    use crate::zeros::parse_zero_table;

    const FIRST_30: &str = "14.134725142 21.022039639 25.010857580 30.424876126 32.935061588
        37.586178159 40.918719012 43.327073281 48.005150881 49.773832478
        52.970321478 56.446247697 59.347044003 60.831778525 65.112544048
        67.079810529 69.546401711 72.067157674 75.704690699 77.144840069
        79.337375020 82.910380854 84.735492981 87.425274613 88.809111208
        92.491899271 94.651344041 95.870634228 98.831194218 101.317851006";

    fn catalog() -> ZeroCatalog {
        let text = FIRST_30.split_whitespace().collect::<Vec<_>>().join("\n");
        parse_zero_table(text.as_bytes(), &Mag::from_f64(5e-10), "first 30").unwrap()
    }

    #[test]
    fn main_term_at_100() {
        let m = main_term(&RealBall::from_i64(100, 128)).unwrap();
        assert!((m.to_f64() - 28.127).abs() < 1e-3, "{}", m.to_f64());
    }

    #[test]
    fn count_at_100() {
        let c = count_vs_formula(&catalog(), &RealBall::from_i64(100, 128), 2.0).unwrap();
        assert_eq!(c.counted, 29);
        assert!(c.within_slack);
    }

    #[test]
    fn nothing_below_two_pi() {
        let two_pi = ball::pi(128).mul_2si(1);
        let c = count_vs_formula(&catalog(), &two_pi, 2.0).unwrap();
        assert_eq!(c.counted, 0);
    }

    #[test]
    fn beyond_catalog() {
        let r = count_vs_formula(&catalog(), &RealBall::from_i64(200, 128), 2.0);
        assert!(matches!(r, Err(Error::TBeyondCatalog { .. })));
    }
}
