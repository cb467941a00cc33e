//! Built-in cross checks: every engine the verifier relies on is exercised
//! against hand-checkable values, plus negative controls that demonstrate
//! the checks can actually fail (a doubled normalization convention and a
//! grid too coarse for the dd^c tolerance).

use crate::arith::{arith_c1c1, HermLineBundleArith, RationalSection};
use crate::error::Result;
use crate::exact::{bareiss_det, cokernel_order, snf, CokernelOrder, IntMatrix};
use crate::forms::{
    bott_chern, curvature, ddc_metric_change_residual, integrate, CExpr, ChartGrid, ExactSeqData,
    FamilyChoice, HermBundle,
};
use crate::poly::{BinaryForm, MultiPoly};
use crate::scheme::{gamma_order, koszul, localized_chern_pushforward, FiniteSchemeData, Rat};
use crate::tolerances::{TOL_DDC_ABSOLUTE, TOL_EXACT_LOG, TOL_NORMALIZATION, TOL_POINTWISE};
use num_bigint::BigUint;
use num_traits::Zero;

pub struct SelftestEntry {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// The measured quantity the verdict was taken on (NaN if the check
    /// errored before producing one).
    pub value: f64,
    pub detail: String,
}

/// Run the self-check suites, optionally restricted to suites whose name
/// contains `filter`. Failures are reported, never panicked.
pub fn selftest(filter: Option<&str>) -> Vec<SelftestEntry> {
    let mut out = Vec::new();
    let wanted = |suite: &str| filter.is_none_or(|f| suite.contains(f));

    if wanted("smith_normal_form") {
        smith_normal_form(&mut out);
    }
    if wanted("resultant_order_agreement") {
        resultant_order_agreement(&mut out);
    }
    if wanted("koszul_lemma") {
        koszul_lemma(&mut out);
    }
    if wanted("ddc_residual") {
        ddc_residual(&mut out);
    }
    if wanted("normalization") {
        normalization(&mut out);
    }
    if wanted("pairing_properties") {
        pairing_properties(&mut out);
    }
    if wanted("negative_controls") {
        negative_controls(&mut out);
    }
    out
}

fn push(
    out: &mut Vec<SelftestEntry>,
    suite: &'static str,
    name: &'static str,
    check: impl FnOnce() -> Result<(bool, f64, String)>,
) {
    match check() {
        Ok((passed, value, detail)) => out.push(SelftestEntry {
            suite,
            name,
            passed,
            value,
            detail,
        }),
        Err(e) => out.push(SelftestEntry {
            suite,
            name,
            passed: false,
            value: f64::NAN,
            detail: format!("did not run: {e}"),
        }),
    }
}

fn smith_normal_form(out: &mut Vec<SelftestEntry>) {
    const SUITE: &str = "smith_normal_form";

    push(out, SUITE, "diag_2_3_normalizes_to_1_6", || {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        let got: Vec<i64> = s
            .diag
            .iter()
            .map(|d| i64::try_from(d).expect("small divisors"))
            .collect();
        Ok((got == [1, 6], 0.0, format!("diag {got:?}, want [1, 6]")))
    });

    push(
        out,
        SUITE,
        "transforms_are_unimodular_and_diagonalize",
        || {
            let m = IntMatrix::from_rows(&[vec![4, 6, 10], vec![6, 9, 3], vec![0, 5, 7]]);
            let s = snf(&m);
            let d = s.u.mul(&m).mul(&s.v);
            let mut diagonal = true;
            for i in 0..3 {
                for j in 0..3 {
                    let expect = if i == j { s.diag[i].clone() } else { 0.into() };
                    diagonal &= d.get(i, j) == &expect;
                }
            }
            let one = BigUint::from(1u32);
            let unimodular =
                bareiss_det(&s.u).magnitude() == &one && bareiss_det(&s.v).magnitude() == &one;
            let chain = s.diag.windows(2).all(|w| {
                (w[0].is_zero() && w[1].is_zero()) || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())
            });
            Ok((
            diagonal && unimodular && chain,
            0.0,
            format!("U M V diagonal: {diagonal}, |det U| = |det V| = 1: {unimodular}, divisibility chain: {chain}"),
        ))
        },
    );

    push(out, SUITE, "cokernel_orders_match_hand_values", || {
        let finite = cokernel_order(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]))
            == CokernelOrder::Finite(BigUint::from(6u32));
        let wide = cokernel_order(&IntMatrix::from_rows(&[vec![2, 3]]))
            == CokernelOrder::Finite(BigUint::from(1u32));
        let infinite = cokernel_order(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]]))
            == CokernelOrder::Infinite;
        Ok((
            finite && wide && infinite,
            0.0,
            format!(
                "diag(2,3) -> 6: {finite}, [2 3] -> 1: {wide}, rank drop -> infinite: {infinite}"
            ),
        ))
    });
}

fn resultant_order_agreement(out: &mut Vec<SelftestEntry>) {
    const SUITE: &str = "resultant_order_agreement";
    let cases: [(&str, usize, &str, usize, u64); 4] = [
        ("X0", 1, "2*X1", 1, 2),
        ("X0 - 2*X1", 1, "X0 + 2*X1", 1, 4),
        ("X0^2 + X1^2", 2, "X0 - 2*X1", 1, 5),
        ("2*X0 + 3*X1", 1, "3*X0 + 5*X1", 1, 1),
    ];
    push(out, SUITE, "section_orders_equal_resultants", || {
        let mut lines = Vec::new();
        let mut ok = true;
        for (s1, d1, s2, d2, want) in cases {
            let f = BinaryForm::parse(s1, d1)?;
            let g = BinaryForm::parse(s2, d2)?;
            let phi = FiniteSchemeData::from_sections(&f, &g)?;
            let order = gamma_order(&phi)?;
            let res = phi
                .resultant_magnitude
                .clone()
                .expect("section presentation always carries a resultant");
            let hit = order == res && order == BigUint::from(want);
            ok &= hit;
            lines.push(format!(
                "({s1}; {s2}): order {order}, |Res| {res}, want {want}"
            ));
        }
        Ok((ok, 0.0, lines.join(" | ")))
    });
}

fn affine_polys(texts: &[&str]) -> Vec<MultiPoly> {
    texts
        .iter()
        .map(|t| MultiPoly::parse(t, &["x"]).expect("fixture polynomial"))
        .collect()
}

fn koszul_lemma(out: &mut Vec<SelftestEntry>) {
    const SUITE: &str = "koszul_lemma";

    push(
        out,
        SUITE,
        "five_and_x_push_to_one_point_of_mass_log5",
        || {
            let k = koszul(&affine_polys(&["5", "x"]));
            let z = localized_chern_pushforward(&k)?;
            let m = z.multiplicity(5);
            let d = (z.degree_log() - 5f64.ln()).abs();
            Ok((
                m == Rat::from_int(1) && d <= TOL_EXACT_LOG && k.composition_is_zero(),
                d,
                format!(
                    "multiplicity at 5: {}/{}, degree_log error {d:.3e}",
                    m.num(),
                    m.den()
                ),
            ))
        },
    );

    push(out, SUITE, "nonreduced_fiber_counts_length_two", || {
        let k = koszul(&affine_polys(&["x^2 + 1", "5"]));
        let z = localized_chern_pushforward(&k)?;
        let m = z.multiplicity(5);
        let d = (z.degree_log() - 25f64.ln()).abs();
        Ok((
            m == Rat::from_int(2) && d <= TOL_EXACT_LOG,
            d,
            format!(
                "multiplicity at 5: {}/{}, degree_log error {d:.3e}",
                m.num(),
                m.den()
            ),
        ))
    });

    push(
        out,
        SUITE,
        "pushforward_degree_matches_section_order",
        || {
            let phi = FiniteSchemeData::from_affine(affine_polys(&["x^2 + 1", "5"]));
            let order = gamma_order(&phi)?;
            let z = localized_chern_pushforward(&koszul(&affine_polys(&["x^2 + 1", "5"])))?;
            let d = (z.degree_log() - 25f64.ln()).abs();
            Ok((
                order == BigUint::from(25u32) && d <= TOL_EXACT_LOG,
                d,
                format!("section order {order}, pushforward degree error {d:.3e}"),
            ))
        },
    );
}

fn bump_factors(amplitude: f64) -> (CExpr, CExpr) {
    let eta = format!("exp(0 - {amplitude} * re(z) * (1 + abs2(z))^-1)");
    let fz = CExpr::parse(&eta, "z").expect("bump factor");
    let fw = CExpr::parse(&eta.replace('z', "w"), "w").expect("bump factor");
    (fz, fw)
}

fn bump_pair(amplitude: f64) -> (HermBundle, HermBundle) {
    let (fz, fw) = bump_factors(amplitude);
    (
        HermBundle::fubini_study(1),
        HermBundle::fs_scaled(1, fz, fw),
    )
}

fn shipped_sequence() -> Result<ExactSeqData> {
    ExactSeqData::new(
        -1,
        [HermBundle::flat(), HermBundle::flat()],
        [BinaryForm::parse("X0", 1)?, BinaryForm::parse("2*X1", 1)?],
    )
}

fn ddc_residual(out: &mut Vec<SelftestEntry>) {
    const SUITE: &str = "ddc_residual";

    push(
        out,
        SUITE,
        "metric_change_residual_within_tolerance",
        || {
            let (h, hp) = bump_pair(3.0);
            let r = ddc_metric_change_residual(&h, &hp, &ChartGrid::new(64))?;
            Ok((
                r <= TOL_DDC_ABSOLUTE,
                r,
                format!("sup residual {r:.3e} at N = 64, tolerance {TOL_DDC_ABSOLUTE:.1e}"),
            ))
        },
    );

    push(out, SUITE, "residual_decays_quadratically", || {
        let (h, hp) = bump_pair(3.0);
        let coarse = ddc_metric_change_residual(&h, &hp, &ChartGrid::new(64))?;
        let fine = ddc_metric_change_residual(&h, &hp, &ChartGrid::new(128))?;
        let ratio = coarse / fine;
        Ok((
            (3.0..5.5).contains(&ratio),
            ratio,
            format!("residual {coarse:.3e} -> {fine:.3e}, ratio {ratio:.3} (want about 4)"),
        ))
    });

    push(out, SUITE, "transgression_degree_one_identity", || {
        let seq = shipped_sequence()?;
        let b = bott_chern(&seq, &ChartGrid::new(32), FamilyChoice::A)?;
        Ok((
            b.ddc_residual <= 1e-9,
            b.ddc_residual,
            format!(
                "dd^c ch1 vs alternating curvature sum: {:.3e}",
                b.ddc_residual
            ),
        ))
    });
}

fn normalization(out: &mut Vec<SelftestEntry>) {
    const SUITE: &str = "normalization";

    push(out, SUITE, "first_chern_mass_of_twist_one_is_one", || {
        let grid = ChartGrid::new(64);
        let mass = integrate(&grid, &curvature(&HermBundle::fubini_study(1), &grid)?)?;
        let err = (mass - 1.0).abs();
        Ok((
            err <= TOL_NORMALIZATION,
            mass,
            format!("mass {mass:.12}, error {err:.3e}"),
        ))
    });

    push(
        out,
        SUITE,
        "ddc_of_a_global_function_integrates_to_zero",
        || {
            let grid = ChartGrid::new(64);
            let (fz, fw) = bump_factors(1.0);
            let scaled_flat = HermBundle::fs_scaled(0, fz, fw);
            let mass = integrate(&grid, &curvature(&scaled_flat, &grid)?)?;
            Ok((
                mass.abs() <= TOL_NORMALIZATION,
                mass,
                format!("total mass {mass:.3e}"),
            ))
        },
    );

    push(out, SUITE, "fubini_study_height_is_one_half", || {
        let grid = ChartGrid::new(24);
        let l0 = HermLineBundleArith::with_canonical_section(HermBundle::fubini_study(1));
        let l2 = HermLineBundleArith::with_marked_section(HermBundle::fubini_study(1));
        let pair = arith_c1c1(&l0, &l2, &grid)?;
        let err = (pair.total - 0.5).abs();
        Ok((
            err <= 1e-9,
            pair.total,
            format!("height {:.12}, error {err:.3e}", pair.total),
        ))
    });
}

fn pairing_properties(out: &mut Vec<SelftestEntry>) {
    const SUITE: &str = "pairing_properties";

    push(out, SUITE, "pairing_is_symmetric", || {
        // the squared term makes the scale factor even in re(z), so its
        // mass does not cancel by parity and the two reductions really
        // take different routes to the common value
        let grid = ChartGrid::new(32);
        let eta = "exp(0 - re(z) * (1 + abs2(z))^-1 - 2 * re(z)^2 * (1 + abs2(z))^-2)";
        let fz = CExpr::parse(eta, "z").expect("bump factor");
        let fw = CExpr::parse(&eta.replace('z', "w"), "w").expect("bump factor");
        let bumped = HermBundle::fs_scaled(1, fz, fw);
        let l0 = HermLineBundleArith::with_canonical_section(bumped.clone());
        let l2 = HermLineBundleArith::with_marked_section(HermBundle::fubini_study(2));
        let fwd = arith_c1c1(&l0, &l2, &grid)?;
        let r0 = HermLineBundleArith::with_canonical_section(HermBundle::fubini_study(2));
        let r2 = HermLineBundleArith::with_marked_section(bumped);
        let rev = arith_c1c1(&r0, &r2, &grid)?;
        let d = (fwd.total - rev.total).abs();
        Ok((
            d <= TOL_POINTWISE,
            d,
            format!("{:.12} vs {:.12}, gap {d:.3e}", fwd.total, rev.total),
        ))
    });

    push(out, SUITE, "pairing_ignores_the_marked_section", || {
        let grid = ChartGrid::new(32);
        let l0 = HermLineBundleArith::with_canonical_section(HermBundle::fubini_study(1));
        let canonical = HermLineBundleArith::with_marked_section(HermBundle::fubini_study(1));
        let shifted = HermLineBundleArith::new(
            HermBundle::fubini_study(1),
            RationalSection::new(BinaryForm::parse("X0 + X1", 1)?, BinaryForm::parse("1", 0)?)?,
        )?;
        let a = arith_c1c1(&l0, &canonical, &grid)?;
        let b = arith_c1c1(&l0, &shifted, &grid)?;
        let d = (a.total - b.total).abs();
        Ok((
            d <= TOL_POINTWISE,
            d,
            format!("{:.12} vs {:.12}, gap {d:.3e}", a.total, b.total),
        ))
    });

    push(out, SUITE, "finite_part_is_an_integral_cycle", || {
        let grid = ChartGrid::new(24);
        let one = BinaryForm::parse("1", 0)?;
        let l0 = HermLineBundleArith::new(
            HermBundle::fubini_study(1),
            RationalSection::new(BinaryForm::parse("X0 + X1", 1)?, one.clone())?,
        )?;
        let l2 = HermLineBundleArith::new(
            HermBundle::fubini_study(1),
            RationalSection::new(BinaryForm::parse("X0 - X1", 1)?, one)?,
        )?;
        let pair = arith_c1c1(&l0, &l2, &grid)?;
        let mult = pair.finite_part.multiplicity(2);
        Ok((
            pair.finite_part.is_integral() && mult == Rat::from_int(1),
            mult.to_f64(),
            format!(
                "multiplicity at 2: {}/{}, integral: {}",
                mult.num(),
                mult.den(),
                pair.finite_part.is_integral()
            ),
        ))
    });
}

fn negative_controls(out: &mut Vec<SelftestEntry>) {
    const SUITE: &str = "negative_controls";

    push(out, SUITE, "doubled_dc_convention_is_rejected", || {
        let grid = ChartGrid::new(64);
        let mass = integrate(&grid, &curvature(&HermBundle::fubini_study(1), &grid)?)?;
        let doubled = 2.0 * mass;
        let err = (doubled - 1.0).abs();
        Ok((
            err > TOL_NORMALIZATION,
            doubled,
            format!(
                "doubled convention gives mass {doubled:.6}; normalization check rejects it \
                 (error {err:.3e} > {TOL_NORMALIZATION:.1e})"
            ),
        ))
    });

    push(out, SUITE, "coarse_grid_fails_ddc_tolerance", || {
        let (h, hp) = bump_pair(3.0);
        let calib = ddc_metric_change_residual(&h, &hp, &ChartGrid::new(256))?;
        let c = calib * 256.0 * 256.0;
        let coarse = ddc_metric_change_residual(&h, &hp, &ChartGrid::new(16))?;
        let predicted = c / (16.0 * 16.0);
        Ok((
            coarse > TOL_DDC_ABSOLUTE,
            coarse,
            format!(
                "N = 16 residual {coarse:.3e} exceeds {TOL_DDC_ABSOLUTE:.1e}; \
                 quadratic model from N = 256 predicts {predicted:.3e}"
            ),
        ))
    });
}
