//! Regularized incomplete beta and gamma functions and the two distribution
//! tails the independence tests need.

const EPS: f64 = 1e-15;
const FPMIN: f64 = 1e-300;
const MAX_ITER: usize = 1000;

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Lentz continued fraction for the incomplete beta function.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`, `x` in `[0, 1]`.
pub fn beta_inc(a: f64, b: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * libm::log(x) + b * libm::log1p(-x);
    let front = libm::exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Complement `1 - I_x(a, b)`, evaluated without cancellation.
pub fn beta_inc_complement(a: f64, b: f64, x: f64) -> f64 {
    beta_inc(b, a, 1.0 - x)
}

fn gamma_series(a: f64, x: f64) -> f64 {
    let mut sum = 1.0 / a;
    let mut del = sum;
    let mut ap = a;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * libm::exp(-x + a * libm::log(x) - ln_gamma(a))
}

fn gamma_cf(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    libm::exp(-x + a * libm::log(x) - ln_gamma(a)) * h
}

/// Regularized lower incomplete gamma `P(a, x)`.
pub fn gamma_inc_lower(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0);
    if x <= 0.0 {
        0.0
    } else if x < a + 1.0 {
        gamma_series(a, x)
    } else {
        1.0 - gamma_cf(a, x)
    }
}

/// Regularized upper incomplete gamma `Q(a, x) = 1 - P(a, x)`.
pub fn gamma_inc_upper(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0);
    if x <= 0.0 {
        1.0
    } else if x < a + 1.0 {
        1.0 - gamma_series(a, x)
    } else {
        gamma_cf(a, x)
    }
}

/// Two-sided p-value `2 (1 - F(|t|))` of Student's t with `dof` degrees of freedom.
pub fn student_t_two_sided_p(t: f64, dof: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t.is_infinite() {
        return 0.0;
    }
    let x = dof / (dof + t * t);
    beta_inc(0.5 * dof, 0.5, x).clamp(0.0, 1.0)
}

/// Survival function of the chi-square distribution.
pub fn chi_square_sf(g: f64, dof: f64) -> f64 {
    if g <= 0.0 {
        return 1.0;
    }
    if g.is_infinite() {
        return 0.0;
    }
    gamma_inc_upper(0.5 * dof, 0.5 * g).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adaptive Simpson quadrature; test-only oracle.
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        #[allow(clippy::too_many_arguments)]
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = f(lm);
            let frm = f(rm);
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                return left + right + (left + right - whole) / 15.0;
            }
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
        let fa = f(a);
        let fb = f(b);
        let fm = f(0.5 * (a + b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, tol, 50)
    }

    fn t_density(t: f64, nu: f64) -> f64 {
        let c = libm::exp(ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu)) / libm::sqrt(nu * core::f64::consts::PI);
        c * libm::pow(1.0 + t * t / nu, -0.5 * (nu + 1.0))
    }

    fn chi2_density(x: f64, k: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        libm::exp((0.5 * k - 1.0) * libm::log(x) - 0.5 * x - 0.5 * k * core::f64::consts::LN_2 - ln_gamma(0.5 * k))
    }

    #[test]
    fn t_two_sided_against_quadrature() {
        for (t, nu) in [(2.0, 10.0), (0.5, 3.0), (1.3, 197.0), (3.1, 1.0), (0.01, 50.0)] {
            let inner = simpson(&|s| t_density(s, nu), 0.0, t, 1e-13);
            let oracle = 1.0 - 2.0 * inner;
            let p = student_t_two_sided_p(t, nu);
            assert!((p - oracle).abs() < 1e-10, "t={t} nu={nu}: {p} vs {oracle}");
        }
        let p = student_t_two_sided_p(2.0, 10.0);
        assert!((p - 0.0734).abs() < 5e-5);
    }

    #[test]
    fn t_limits_and_monotone() {
        assert_eq!(student_t_two_sided_p(0.0, 7.0), 1.0);
        assert_eq!(student_t_two_sided_p(f64::INFINITY, 7.0), 0.0);
        assert!(student_t_two_sided_p(1e8, 7.0) < 1e-40);
        assert_eq!(student_t_two_sided_p(-1.7, 9.0), student_t_two_sided_p(1.7, 9.0));
        let mut prev = 1.0;
        for i in 1..200 {
            let p = student_t_two_sided_p(i as f64 * 0.05, 12.0);
            assert!(p <= prev);
            prev = p;
        }
    }

    #[test]
    fn chi_square_against_quadrature() {
        // sf = 1 - integral of the density over [0, g]; the dof = 1 density has
        // an integrable singularity at 0, so integrate in u = sqrt(x) there.
        let g = 3.841;
        let oracle = 1.0 - simpson(&|u| 2.0 * u * chi2_density(u * u, 1.0), 0.0, libm::sqrt(g), 1e-14);
        let p = chi_square_sf(g, 1.0);
        assert!((p - oracle).abs() < 1e-10);
        assert!((p - 0.05).abs() < 1e-4);
        for (g, k) in [(2.0, 2.0), (7.5, 4.0), (30.0, 12.0), (0.3, 3.0)] {
            let oracle = 1.0 - simpson(&|x| chi2_density(x, k), 0.0, g, 1e-14);
            assert!((chi_square_sf(g, k) - oracle).abs() < 1e-10, "g={g} k={k}");
        }
        // dof 2 closed form
        assert!((chi_square_sf(5.0, 2.0) - libm::exp(-2.5)).abs() < 1e-14);
    }

    #[test]
    fn chi_square_tail_bound() {
        // dof 1: sf(g) = erfc(sqrt(g/2)) <= exp(-g/2)
        let p = chi_square_sf(138.63, 1.0);
        assert!(p < 1e-15);
        assert!(p <= libm::exp(-138.63 / 2.0));
        assert!((chi_square_sf(138.63, 1.0) - libm::erfc(libm::sqrt(138.63 / 2.0))).abs() < 1e-40);
        assert_eq!(chi_square_sf(0.0, 3.0), 1.0);
    }

    #[test]
    fn beta_inc_identities() {
        // I_x(1, 1) = x ; I_x(a, 1) = x^a
        for x in [0.1, 0.5, 0.9] {
            assert!((beta_inc(1.0, 1.0, x) - x).abs() < 1e-14);
            assert!((beta_inc(2.5, 1.0, x) - libm::pow(x, 2.5)).abs() < 1e-13);
            assert!((beta_inc(2.0, 3.0, x) + beta_inc_complement(2.0, 3.0, x) - 1.0).abs() < 1e-14);
        }
        assert!((gamma_inc_lower(3.0, 2.0) + gamma_inc_upper(3.0, 2.0) - 1.0).abs() < 1e-14);
    }
}
