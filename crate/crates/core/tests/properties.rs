use std::collections::BTreeMap;
use std::sync::OnceLock;

use foreal_core::approx::{pade, ApproxError, rational_to_cfe, Affine, Poly};
use foreal_core::baselines::{carlson, carlson_residual, modified_oustaloup, oustaloup};
use foreal_core::controllers::*;
use foreal_core::exact::rational::{int, rat, to_f64};
use foreal_core::exact::{poly_gcd, poly_normalize, solve_fraction_free};
use foreal_core::freqresp::{bode, FloatTf, FreqUnit, FrequencyGrid};
use foreal_core::ladder::{factor_negative_admittance, ladder_to_tf, map_elements, synthesize_ladder, LadderNetwork, Role};
use foreal_core::series::{binomial_series, exp_series, leadlag_kernel_series, log1p_series};
use foreal_core::{BaselineConfig, BigRat, ParamPoly, PowerSeries, Ring, Symbol, TransferFunction};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = BigRat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

/// Non-integer `p/q` strictly inside `(lo, hi)`.
fn fraction_in(lo: i64, hi: i64) -> impl Strategy<Value = BigRat> {
    prop::sample::select(vec![3i64, 4, 5, 7])
        .prop_flat_map(move |q| ((lo * q + 1)..(hi * q), Just(q)))
        .prop_filter("non-integer", |(p, q)| p % q != 0)
        .prop_map(|(p, q)| rat(p, q))
}

/// Polynomial in `lambda` and `mu` as a list of `(i, j, c)` terms.
fn small_terms() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..5)
}

fn univariate() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..4, Just(0u32), -5i64..=5), 0..5)
}

fn build(terms: &[(u32, u32, i64)]) -> ParamPoly {
    let l = ParamPoly::var(Symbol::Lambda);
    let m = ParamPoly::var(Symbol::Mu);
    terms.iter().fold(ParamPoly::zero(), |acc, &(i, j, c)| {
        acc + (l.pow(i) * m.pow(j)).scale(&int(c))
    })
}

fn brute_product(a: &[(u32, u32, i64)], b: &[(u32, u32, i64)]) -> ParamPoly {
    let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for &(i, j, c) in a {
        for &(k, l, d) in b {
            *acc.entry((i + k, j + l)).or_default() += c * d;
        }
    }
    build(&acc.into_iter().map(|((i, j), c)| (i, j, c)).collect::<Vec<_>>())
}

fn ratio_tf(num: Vec<BigRat>, den: Vec<BigRat>) -> TransferFunction<BigRat> {
    TransferFunction::from_coeffs(num, den).unwrap()
}

/// Random ladder with a constant first element and `n` affine elements.
fn ladder_values() -> impl Strategy<Value = Vec<Affine>> {
    (1usize..=5).prop_flat_map(|n| {
        (
            nonzero_rat(),
            prop::collection::vec((nonzero_rat(), nonzero_rat()), n),
        )
            .prop_map(|(z1, rest)| {
                let mut v = vec![Affine { g: z1, h: BigRat::zero() }];
                v.extend(rest.into_iter().map(|(g, h)| Affine { g, h }));
                v
            })
    })
}

fn range() -> impl Strategy<Value = Range> {
    prop_oneof![Just(Range::Low), Just(Range::High)]
}

fn integrator(lambda: &BigRat, range: Range, n: usize) -> TransferFunction<BigRat> {
    realize_differintegrator(lambda, Sign::Integrator, range, &int(1), n).unwrap().tf
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_matches_brute_force(a in small_terms(), b in small_terms()) {
        prop_assert_eq!(build(&a) * build(&b), brute_product(&a, &b));
    }

    #[test]
    fn ring_laws(a in small_terms(), b in small_terms(), c in small_terms()) {
        let (a, b, c) = (build(&a), build(&b), build(&c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn gcd_divides_both(f in univariate(), g in univariate(), h in univariate()) {
        let (f, g, h) = (build(&f), build(&g), build(&h));
        let (a, b) = (&f * &g, &f * &h);
        prop_assume!(!a.is_zero() || !b.is_zero());
        let d = poly_gcd(&a, &b).unwrap();
        prop_assert!(a.div_exact(&d).is_some());
        prop_assert!(b.div_exact(&d).is_some());
    }

    #[test]
    fn normalize_is_idempotent(a in small_terms()) {
        let a = build(&a);
        prop_assume!(!a.is_zero());
        let (c, p) = poly_normalize(&a);
        prop_assert_eq!(p.scale(&c), a);
        prop_assert_eq!(poly_normalize(&p), (BigRat::one(), p));
    }

    #[test]
    fn solve_residual_is_zero(
        n in 1usize..=4,
        entries in prop::collection::vec(small_rat(), 16),
        rhs in prop::collection::vec(small_rat(), 4),
    ) {
        let a: Vec<Vec<BigRat>> = (0..n).map(|i| entries[i * 4..i * 4 + n].to_vec()).collect();
        let b = rhs[..n].to_vec();
        if let Ok(sol) = solve_fraction_free(&a, &b) {
            for (row, bi) in a.iter().zip(&b) {
                let lhs = row.iter().zip(&sol.numerators).fold(BigRat::zero(), |acc, (x, y)| acc + x * y);
                prop_assert_eq!(lhs, bi * &sol.denominator);
            }
        }
    }

    #[test]
    fn binomial_addition_law(a in small_rat(), b in small_rat(), n in 1usize..8) {
        let lhs = binomial_series(&a, n).mul(&binomial_series(&b, n)).unwrap();
        prop_assert_eq!(lhs, binomial_series(&(&a + &b), n));
    }

    #[test]
    fn pade_matches_series(
        m in 0usize..=4,
        k in 0usize..=4,
        raw in prop::collection::vec(small_rat(), 9),
    ) {
        let mut c = raw[..=m + k].to_vec();
        if c[0].is_zero() {
            c[0] = BigRat::one();
        }
        let p = match pade(&PowerSeries::new(c.clone()), m, k) {
            Ok(p) => p,
            Err(e) => {
                prop_assert_eq!(e, ApproxError::NoPadeSolution { m, k });
                return Ok(());
            }
        };
        let residual = &(p.tf.den() * &Poly::new(c)) - p.tf.num();
        prop_assert!((0..=m + k).all(|i| residual.coeff(i).is_zero()));
    }

    #[test]
    fn pade_reciprocal_duality(
        m in 0usize..=3,
        k in 0usize..=3,
        raw in prop::collection::vec(nonzero_rat(), 7),
    ) {
        let s = PowerSeries::new(raw[..=m + k].to_vec());
        let (Ok(a), Ok(b)) = (pade(&s, m, k), pade(&s.reciprocal().unwrap(), k, m)) else {
            return Ok(());
        };
        prop_assume!(a.defect == 0 && b.defect == 0);
        prop_assert!(b.tf.equivalent(&a.tf.reciprocal().unwrap()));
    }

    #[test]
    fn cfe_reconstructs_ladder_impedances(values in ladder_values()) {
        let h = ladder_to_tf(&LadderNetwork::from_values(values.clone())).unwrap();
        let cf = rational_to_cfe(&h).unwrap();
        prop_assert_eq!(cf.len(), h.den().degree() + 1);
        prop_assert!(cf.quotients[0].h.is_zero());
        prop_assert!(cf.quotients[1..].iter().all(|q| !q.h.is_zero()));
        prop_assert!(cf.reconstruct().equivalent(&h));
        prop_assert_eq!(cf.quotients, values);
    }

    #[test]
    fn differintegrator_cfe_shape(lambda in fraction_in(0, 1), r in range(), n in 1usize..=5) {
        let h = integrator(&lambda, r, n);
        let cf = rational_to_cfe(&h).unwrap();
        prop_assert_eq!(cf.len(), n + 1);
        prop_assert!(cf.quotients[0].h.is_zero());
        prop_assert!(cf.quotients[1..].iter().all(|q| !q.h.is_zero()));
        prop_assert!(cf.reconstruct().equivalent(&h));
    }

    #[test]
    fn boundary_limits(lambda in fraction_in(0, 1), n in 1usize..=5) {
        let lo = integrator(&lambda, Range::Low, n);
        prop_assert_eq!(lo.num().leading(), lo.den().leading());
        let hi = integrator(&lambda, Range::High, n);
        prop_assert_eq!(hi.eval_rat(&BigRat::zero()), Some(BigRat::one()));
    }

    #[test]
    fn leadlag_value_at_zero(
        kc in fraction_in(0, 20),
        lambda in fraction_in(0, 5),
        x in fraction_in(0, 1),
        alpha in fraction_in(0, 1),
        n in 1usize..=4,
    ) {
        let r = realize_leadlag(&kc, &lambda, &x, &alpha, n).unwrap();
        let want = to_f64(&kc) * to_f64(&x).powf(to_f64(&alpha));
        let got = to_f64(&r.folded().eval_rat(&BigRat::zero()).unwrap());
        prop_assert!(((got - want) / want).abs() < 1e-12);
    }

    #[test]
    fn differentiator_is_reciprocal(lambda in fraction_in(0, 1), r in range(), n in 1usize..=5) {
        let d = realize_differintegrator(&lambda, Sign::Differentiator, r, &int(1), n).unwrap().tf;
        prop_assert!(d.equivalent(&integrator(&lambda, r, n).reciprocal().unwrap()));
    }

    #[test]
    fn symbolic_low_range_matches_numeric(lambda in fraction_in(0, 1)) {
        static SYM: OnceLock<TransferFunction<ParamPoly>> = OnceLock::new();
        let sym = SYM.get_or_init(|| symbolic_differintegrator(Range::Low, 4, Sign::Integrator).unwrap().tf);
        let at = sym.substitute(&[(Symbol::Lambda, lambda.clone())]).to_numeric().unwrap();
        prop_assert!(at.equivalent(&integrator(&lambda, Range::Low, 4)));
    }

    #[test]
    fn fopd_symbolic_matches_numeric(kp in fraction_in(0, 10), kd in fraction_in(0, 10), mu in fraction_in(0, 1)) {
        static SYM: OnceLock<TransferFunction<ParamPoly>> = OnceLock::new();
        let sym = SYM.get_or_init(|| {
            let v = ParamPoly::var;
            symbolic_fopd_bracket(&v(Symbol::Kp), &v(Symbol::Kd), &v(Symbol::Mu), 3).unwrap().tf
        });
        let at = [(Symbol::Kp, kp.clone()), (Symbol::Kd, kd.clone()), (Symbol::Mu, mu.clone())];
        let num = realize_fopd_bracket(&kp, &kd, &mu, 3).unwrap().tf;
        prop_assert!(sym.substitute(&at).to_numeric().unwrap().equivalent(&num));
    }

    #[test]
    fn ladder_round_trip(values in ladder_values()) {
        let net = LadderNetwork::from_values(values);
        let h = ladder_to_tf(&net).unwrap();
        let back = synthesize_ladder(&h).unwrap();
        prop_assert_eq!(back.len(), h.den().degree() + 1);
        prop_assert!(ladder_to_tf(&back).unwrap().equivalent(&h));
        let roles: Vec<Role> = back.elements.iter().map(|e| e.role).collect();
        let alternating = roles.iter().enumerate().all(|(i, r)| *r == [Role::Z, Role::Y][i % 2]);
        prop_assert!(alternating);
        prop_assert_eq!(back, net);
    }

    #[test]
    fn sign_bookkeeping(values in ladder_values()) {
        let net = LadderNetwork::from_values(values.clone());
        for (c, v) in map_elements(&net).iter().zip(&values) {
            prop_assert_eq!(c.affine_value(), (v.g.clone(), v.h.clone()));
            for b in &c.branches {
                prop_assert!(b.components.iter().all(|x| x.value.is_positive()));
            }
        }
    }

    #[test]
    fn cascade_identity(g in small_rat(), h in small_rat()) {
        prop_assume!(!g.is_zero() || !h.is_zero());
        let pair = factor_negative_admittance(&g, &h).unwrap();
        let want = ratio_tf(vec![BigRat::one()], vec![g, h]);
        prop_assert!(pair.product().equivalent(&want));
    }

    #[test]
    fn conjugate_symmetry(lambda in fraction_in(0, 1), r in range(), n in 1usize..=5, w in 1e-3f64..1e3) {
        let f = FloatTf::from(&integrator(&lambda, r, n));
        let (a, b) = (f.eval(Complex64::new(0.0, w)), f.eval(Complex64::new(0.0, -w)));
        prop_assert!((a.conj() - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn bode_product_rule(l1 in fraction_in(0, 1), l2 in fraction_in(0, 1), n in 1usize..=4) {
        let (a, b) = (integrator(&l1, Range::Low, n), integrator(&l2, Range::High, n));
        let grid = FrequencyGrid::log(1e-3, 1e3, 10, FreqUnit::RadPerSec).unwrap();
        let (sa, sb, sab) = (bode(&a, &grid), bode(&b, &grid), bode(&a.mul(&b), &grid));
        for i in 0..grid.freqs.len() {
            prop_assert!((sab.mag_db[i] - sa.mag_db[i] - sb.mag_db[i]).abs() < 1e-9);
            let dp = sab.phase_deg[i] - sa.phase_deg[i] - sb.phase_deg[i];
            prop_assert!((dp - 360.0 * (dp / 360.0).round()).abs() < 1e-9);
        }
    }

    #[test]
    fn phase_limits(lambda in fraction_in(0, 1), n in 1usize..=5) {
        let grid = FrequencyGrid::log(1e-8, 1e8, 2, FreqUnit::RadPerSec).unwrap();
        let lo = bode(&integrator(&lambda, Range::Low, n), &grid);
        let hi = bode(&integrator(&lambda, Range::High, n), &grid);
        prop_assert!(lo.phase_deg.last().unwrap().abs() < 1e-3);
        prop_assert!(hi.phase_deg[0].abs() < 1e-3);
    }

    #[test]
    fn baselines_have_positive_coefficients(lambda in 0.05f64..0.95, n in 1usize..=4, integ in any::<bool>()) {
        let mut cfg = BaselineConfig::new(lambda, (1e-2, 1e2), n);
        if integ {
            cfg = cfg.integrator();
        }
        let positive = |h: &TransferFunction<BigRat>| {
            h.num().coeffs().iter().chain(h.den().coeffs()).all(|c| c.is_positive())
        };
        prop_assert!(positive(&oustaloup(&cfg).unwrap()));
        // The biquad correction puts a zero at s = 0 in the modified filter.
        let m = modified_oustaloup(&cfg).unwrap();
        let zero_at_origin = if integ { m.den() } else { m.num() };
        prop_assert!(zero_at_origin.coeff(0).is_zero());
        prop_assert!(m.num().coeffs().iter().chain(m.den().coeffs()).all(|c| !c.is_negative()));
    }

    #[test]
    fn oustaloup_gain_at_band_centre(lambda in 0.05f64..0.95, n in 1usize..=5, lo in -3i32..0, hi in 1i32..4) {
        let (wb, wh) = (10f64.powi(lo), 10f64.powi(hi));
        let h = oustaloup(&BaselineConfig::new(lambda, (wb, wh), n)).unwrap();
        let wu = (wb * wh).sqrt();
        let mag = FloatTf::from(&h).eval(Complex64::new(0.0, wu)).norm();
        prop_assert!((mag / wu.powf(lambda) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn binomial_addition_law_symbolic() {
    let (a, b) = (ParamPoly::var(Symbol::Lambda), ParamPoly::var(Symbol::Mu));
    for n in 1..=6 {
        let lhs = binomial_series(&a, n).mul(&binomial_series(&b, n)).unwrap();
        assert_eq!(lhs, binomial_series(&(&a + &b), n));
    }
}

#[test]
fn kernel_at_unit_exponent() {
    let (alpha, x) = (ParamPoly::var(Symbol::Alpha), ParamPoly::var(Symbol::X));
    let n = 6;
    let kernel = leadlag_kernel_series(&alpha, &x, n).map(|c| c.substitute_rat(Symbol::Alpha, &BigRat::one()));
    // (1 + w) / (1 + x w) = 1 + sum_k (1 - x) (-x)^(k-1) w^k
    let direct: Vec<ParamPoly> = (0..=n)
        .map(|k| {
            if k == 0 {
                ParamPoly::one()
            } else {
                (ParamPoly::one() - x.clone()) * (-x.clone()).pow(k as u32 - 1)
            }
        })
        .collect();
    assert_eq!(kernel, PowerSeries::new(direct));
}

#[test]
fn exp_and_log_invert() {
    for n in 1..=8 {
        let exp = exp_series::<BigRat>(n);
        let log = log1p_series::<BigRat>(n);
        let mut one_plus_w = vec![BigRat::zero(); n + 1];
        one_plus_w[0] = BigRat::one();
        one_plus_w[1] = BigRat::one();
        assert_eq!(exp.compose(&log).unwrap(), PowerSeries::new(one_plus_w));

        let mut exp_minus_one = exp.clone().into_coeffs();
        exp_minus_one[0] = BigRat::zero();
        let mut w = vec![BigRat::zero(); n + 1];
        w[1] = BigRat::one();
        assert_eq!(log.compose(&PowerSeries::new(exp_minus_one)).unwrap(), PowerSeries::new(w));
    }
}

#[test]
fn carlson_contracts() {
    for lambda in [rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4), rat(3, 4)] {
        let residuals: Vec<f64> = (1..=3)
            .map(|k| carlson_residual(&carlson(&lambda, k, Sign::Differentiator).unwrap(), &lambda, 1.0))
            .collect();
        assert!(residuals.windows(2).all(|p| p[1] <= p[0] + 1e-15), "{lambda}: {residuals:?}");
    }
}

#[test]
fn ring_trait_scale_agrees_with_multiplication() {
    let p = ParamPoly::var(Symbol::Lambda) + ParamPoly::from(3);
    assert_eq!(Ring::scale(&p, &rat(2, 3)), p * ParamPoly::constant(rat(2, 3)));
}
