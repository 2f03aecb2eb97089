use proptest::prelude::*;

use tablealg::chartab::{characters_auto, multiset_equal, Mode};
use tablealg::fixtures::{
    affine_plane_scheme, complete_graph_scheme, cyclic_group, group_algebra, rank_three_not_in_s, symmetric_group_s3,
};
use tablealg::scalar::parse_rational;
use tablealg::scheme::{admissible_srg_parameters, affine_plane_algebra, srg_algebra};
use tablealg::{
    character_table, int, parse_scheme, parse_tba, rational, scheme_to_algebra, write_scheme, write_tba,
    ChartabOptions, Rational, Scalar,
};

fn opts(seed: u64) -> ChartabOptions {
    ChartabOptions { seed, ..ChartabOptions::default() }
}

// For a group algebra ζ_χ = χ(1).
#[test]
fn group_algebras_have_multiplicity_equal_to_degree() {
    for n in 1..=8 {
        let (ct, _) = character_table::<tablealg::C64>(&cyclic_group(n).to_float(), opts(1)).unwrap();
        assert_eq!(ct.len(), n);
        assert!(ct.zeta.iter().all(|z| z.approx_eq(&tablealg::C64::new(1.0, 0.0), 1e-9)), "Z/{n}");
    }
    let (ct, _) = character_table::<Rational>(&symmetric_group_s3(), opts(1)).unwrap();
    let mut z = ct.zeta.clone();
    z.sort();
    assert_eq!(z, vec![int(1), int(1), int(2)]);
    assert_eq!(ct.degrees_chi.iter().map(|d| d * d).sum::<usize>(), 6);
}

#[test]
fn klein_four_from_multiplication_rule() {
    let t = group_algebra(4, |a, b| a ^ b, |a| a);
    let (ct, _) = character_table::<Rational>(&t, opts(2)).unwrap();
    assert_eq!(ct.len(), 4);
    for row in &ct.characters {
        assert!(row.iter().all(|v| v == &int(1) || v == &int(-1)));
    }
}

#[test]
fn complete_graph_scheme_characters() {
    for n in 2..=7 {
        let (t, _) = scheme_to_algebra(&complete_graph_scheme(n)).unwrap();
        let (ct, _) = character_table::<Rational>(&t, opts(3)).unwrap();
        let k = n as i64 - 1;
        assert_eq!(ct.characters, vec![vec![int(1), int(k)], vec![int(1), int(-1)]]);
        assert_eq!(ct.zeta, vec![int(1), int(k)]);
    }
}

#[test]
fn affine_scheme_matches_generated_algebra() {
    for p in [2, 3, 5] {
        let (from_points, _) = scheme_to_algebra(&affine_plane_scheme(p)).unwrap();
        let gen = affine_plane_algebra(p).unwrap();
        let a = character_table::<Rational>(&from_points, opts(4)).unwrap().0;
        let b = character_table::<Rational>(&gen, opts(4)).unwrap().0;
        assert_eq!(a.sorted_zeta(), b.sorted_zeta(), "p = {p}");
        assert_eq!(from_points.degrees(), gen.degrees());
    }
}

#[test]
fn every_admissible_srg_table_validates() {
    for (n, k, l, m) in admissible_srg_parameters(30) {
        let t = srg_algebra(n, k, l, m).unwrap();
        assert!(t.validate(0.0).is_valid(), "({n},{k},{l},{m})");
        assert!(t.is_table_algebra(0.0));
    }
}

#[test]
fn tba_round_trips() {
    let mut tables = vec![rank_three_not_in_s(), symmetric_group_s3()];
    for q in 2..=7 {
        tables.push(affine_plane_algebra(q).unwrap());
    }
    tables.push(srg_algebra(10, 3, 0, 1).unwrap());
    for t in tables {
        assert_eq!(parse_tba(&write_tba(&t)).unwrap(), t);
    }
    let s = affine_plane_scheme(3);
    assert_eq!(parse_scheme(&write_scheme(&s)).unwrap(), s);
}

#[test]
fn auto_mode_agrees_with_float_mode() {
    for t in [rank_three_not_in_s(), affine_plane_algebra(4).unwrap(), srg_algebra(13, 6, 2, 3).unwrap()] {
        let a = characters_auto(&t, Mode::Auto, opts(5)).unwrap();
        let f = characters_auto(&t, Mode::Float, opts(6)).unwrap();
        assert!(!f.is_exact());
        let mut x = a.zeta_c64();
        let mut y = f.zeta_c64();
        x.sort_by(|a, b| a.re.total_cmp(&b.re));
        y.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!(multiset_equal(&x, &y, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seed_does_not_change_exact_table(seed in any::<u64>(), q in 2usize..=5) {
        let t = affine_plane_algebra(q).unwrap();
        let a = character_table::<Rational>(&t, opts(seed)).unwrap().0;
        let b = character_table::<Rational>(&t, opts(0)).unwrap().0;
        prop_assert_eq!(a.characters, b.characters);
        prop_assert_eq!(a.zeta, b.zeta);
    }

    #[test]
    fn relabeling_keeps_zeta(perm in Just((1..6usize).collect::<Vec<_>>()).prop_shuffle(), seed in any::<u64>()) {
        let t = affine_plane_algebra(4).unwrap();
        let full: Vec<usize> = std::iter::once(0).chain(perm).collect();
        let t2 = t.relabel(&full).unwrap();
        prop_assert!(t2.validate(0.0).is_valid());
        let a = character_table::<Rational>(&t, opts(seed)).unwrap().0;
        let b = character_table::<Rational>(&t2, opts(seed)).unwrap().0;
        prop_assert_eq!(a.sorted_zeta(), b.sorted_zeta());
    }

    #[test]
    fn rationals_render_and_parse(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rational(n, d);
        prop_assert_eq!(parse_rational(&x.render()), Some(x));
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,200}") {
        let _ = parse_tba(&text);
        let _ = parse_scheme(&text);
        let _ = parse_tba(&format!("tba 1\n{text}"));
        let _ = parse_scheme(&format!("scheme 1\npoints 3\n{text}"));
    }

    #[test]
    fn scaled_rank_two_algebra(num in 1i64..50, den in 1i64..50) {
        // b² = g + (g - 1) b with degree g; a table algebra exactly when g >= 1
        let g = rational(num, den);
        let text = format!(
            "tba 1\nrank 2\nsc 0 0 0 1\nsc 0 1 1 1\nsc 1 0 1 1\nsc 1 1 0 {}\nsc 1 1 1 {}\ndeg 1 {}\n",
            g.render(), (g.clone() - int(1)).render(), g.render()
        );
        let t = parse_tba(&text).unwrap();
        prop_assert!(t.validate(0.0).is_valid());
        prop_assert_eq!(t.is_table_algebra(0.0), g >= int(1));
        let (ct, _) = character_table::<Rational>(&t, opts(7)).unwrap();
        // ζ = (1, g)
        prop_assert_eq!(ct.zeta, vec![int(1), g]);
    }
}
