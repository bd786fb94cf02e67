//! End-to-end checks through the public API, starting from ideal text.

use bigrade::filtration::{dimension_filtration, mgrade_constancy, sequentially_cm};
use bigrade::homology::{cech_piece_dim, depth_module, koszul_homology_dim};
use bigrade::invariants::{analyze, cd, cd_prime, grade, mgrade};
use bigrade::linalg::{rank, rank_over_field};
use bigrade::local_cohomology::{growth_scan, lc_report, question_probe, Dim};
use bigrade::text::parse_ideal;
use bigrade::{AxisIdeal, Characteristic, FineDegree, MonomialIdeal, PrimeSupport, Rational, RingSpec, Subquotient};
use num_traits::FromPrimitive;

fn ideal(text: &str) -> MonomialIdeal {
    parse_ideal(text).unwrap()
}

const MIXED: &str = "ring 2 4\ngens: x1*x2, x1*y3, x1*y4, x2*y1, y1*y3, y1*y4, y2*y4, y2*y3";
const TWO_PLANES: &str = "ring 2 4\ngens: x1*x2, x1*y3, x1*y4, x2*y1, x2*y2, y1*y3, y1*y4, y2*y3, y2*y4";
const FOUR_CYCLE: &str = "ring 2 2\ngens: x1*x2, x1*y2, x2*y1, y1*y2";

#[test]
fn ideal_operations() {
    let i = ideal("ring 1 2\ngens: x1*y1, y2^2");
    let u = parse_ideal("ring 1 2\ngens: x1*y2").unwrap().gens()[0].clone();
    assert_eq!(i.colon(&u).unwrap(), ideal("ring 1 2\ngens: y1, y2"));
    let a = ideal("ring 1 2\ngens: x1, y1");
    let b = ideal("ring 1 2\ngens: x1, y2");
    assert_eq!(a.intersect(&b).unwrap(), ideal("ring 1 2\ngens: x1, y1*y2"));
    assert_eq!(
        ideal("ring 1 1\ngens: x1^2*y1^3").radical(),
        ideal("ring 1 1\ngens: x1*y1")
    );
    let mp = ideal("ring 1 2\ngens: x1*y1, x1*y2").minimal_primes().unwrap();
    assert_eq!(mp, [PrimeSupport::new([0]), PrimeSupport::new([1, 2])].into());
}

#[test]
fn mixed_end_to_end() {
    let i = ideal(MIXED);
    let q = AxisIdeal::y_block(i.ring()).unwrap();
    assert_eq!(i.dim_quotient().unwrap(), 3);
    let r = analyze(&i, &q).unwrap();
    assert_eq!((r.grade, r.mgrade, r.cd, r.maximal_depth), (1, 1, 2, true));
    assert_eq!(cd_prime(&PrimeSupport::new([0, 2, 3]), &q), 2);
    assert_eq!(cd_prime(&PrimeSupport::new([0, 2, 4, 5]), &q), 1);
    assert_eq!(cd_prime(&PrimeSupport::zero(), &q), 4);
    let ladder = dimension_filtration(&i, &q).unwrap();
    assert_eq!(ladder.steps.iter().map(|s| s.cd).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(
        ladder.steps[0].primes,
        [PrimeSupport::new([0, 2, 4, 5])].into()
    );
    assert!(!sequentially_cm(&i, &q).unwrap().verdict);
    let c = mgrade_constancy(&i, &q).unwrap();
    assert!(c.holds && c.value == 1);
    let h1 = lc_report(&i, &q, 1).unwrap();
    assert!(!h1.finitely_generated);
    let g = growth_scan(&i, &q, 1, &[1, 2, 3, 4]).unwrap();
    assert!(g.windows(2).all(|w| w[0] < w[1]));
    assert!(question_probe(&i, &q).unwrap().is_empty());
}

#[test]
fn two_planes_end_to_end() {
    let i = ideal(TWO_PLANES);
    let r = i.ring();
    let expected = MonomialIdeal::from_vars(*r, [0, 2, 3])
        .intersect(&MonomialIdeal::from_vars(*r, [1, 4, 5]))
        .unwrap();
    assert_eq!(i, expected);
    let q = AxisIdeal::y_block(r).unwrap();
    let n = Subquotient::cyclic(i.clone());
    assert_eq!((grade(&n, &q).unwrap(), cd(&n, &q).unwrap(), mgrade(&i, &q).unwrap()), (1, 2, 2));
    let h1 = lc_report(&i, &q, 1).unwrap();
    assert_eq!(h1.total_dim, Dim::Finite(1));
    // the one class sits in degree 0
    assert_eq!(cech_piece_dim(&n, &q, 1, &FineDegree(vec![0; 6])).unwrap(), 1);
    assert_eq!(cech_piece_dim(&n, &q, 0, &FineDegree(vec![0; 6])).unwrap(), 0);
}

#[test]
fn four_cycle_end_to_end() {
    let i = ideal(FOUR_CYCLE);
    for axis in [AxisIdeal::x_block(i.ring()).unwrap(), AxisIdeal::y_block(i.ring()).unwrap()] {
        let r = analyze(&i, &axis).unwrap();
        assert_eq!((r.grade, r.mgrade, r.maximal_depth), (1, 1, true));
        assert_eq!((r.dim, r.depth, r.cm_ordinary), (2, 1, false));
    }
    // the monomial analogue S/(x1*y1) of the hypersurface has cd 2
    let h = ideal("ring 2 2\ngens: x1*y1");
    let q = AxisIdeal::y_block(h.ring()).unwrap();
    assert_eq!(cd(&Subquotient::cyclic(h), &q).unwrap(), 2);
}

#[test]
fn koszul_and_depth_over_y() {
    let r = RingSpec::new(0, 2).unwrap();
    let all = AxisIdeal::all(&r);
    let hyper = Subquotient::cyclic(ideal("ring 0 2\ngens: y1*y2"));
    assert_eq!(koszul_homology_dim(&hyper, &all, 1, &[1, 1]).unwrap(), 1);
    assert_eq!(depth_module(&hyper, &all).unwrap(), 1);
    let field = Subquotient::cyclic(ideal("ring 0 2\ngens: y1, y2"));
    assert_eq!(depth_module(&field, &all).unwrap(), 0);
    let free = Subquotient::cyclic(MonomialIdeal::zero(r));
    assert_eq!(depth_module(&free, &all).unwrap(), 2);
}

#[test]
fn characteristic_does_not_change_monomial_invariants() {
    for text in [MIXED, TWO_PLANES, FOUR_CYCLE] {
        let i = ideal(text);
        let q = AxisIdeal::y_block(i.ring()).unwrap();
        let base = analyze(&i, &q).unwrap();
        for p in [2, 3] {
            let ring = RingSpec::with_characteristic(i.ring().m(), i.ring().n(), Characteristic::new(p).unwrap()).unwrap();
            let j = MonomialIdeal::new(ring, i.gens().to_vec()).unwrap();
            let r = analyze(&j, &AxisIdeal::y_block(&ring).unwrap()).unwrap();
            assert_eq!((r.grade, r.cd, r.mgrade, r.depth), (base.grade, base.cd, base.mgrade, base.depth));
        }
    }
}

#[test]
fn rational_and_integer_ranks_agree() {
    let rows: Vec<Vec<i64>> = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
    let q: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Rational::from_i64(v).unwrap()).collect())
        .collect();
    assert_eq!(rank_over_field(q), 2);
    assert_eq!(rank(&rows, Characteristic::Zero), 2);
}
