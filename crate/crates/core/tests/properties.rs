mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triskell::checks::gen;
use triskell::json::Object;
use triskell::mll::{normalize, ProofGen};
use triskell::{Carrier, Monoid, Numeric, Triskell, Weight, WeightedMatrix};

fn small_triskell(src: usize, tgt: usize) -> impl Strategy<Value = Triskell> {
    prop::collection::vec((0..src.max(1), 0..tgt.max(1), -4i64..=4, 1i64..=3), 0..8).prop_map(
        move |es| {
            let s = Carrier::numbered("a", src);
            let t = Carrier::numbered("b", tgt);
            let edges = if src == 0 || tgt == 0 {
                Vec::new()
            } else {
                es.into_iter()
                    .map(|(i, j, n, d)| (s.get(i).clone(), t.get(j).clone(), Weight::ratio(n, d)))
                    .collect()
            };
            Triskell::new(s, t, Monoid::Rational, edges).unwrap()
        },
    )
}

fn square(n: usize) -> impl Strategy<Value = WeightedMatrix> {
    prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
        let c = Carrier::numbered("x", n);
        WeightedMatrix::from_fn(c.clone(), c, |i, j| Numeric::int(v[i * n + j])).unwrap()
    })
}

proptest! {
    #[test]
    fn json_round_trip_is_byte_stable(t in small_triskell(3, 2)) {
        let text = Object::Triskell(t.clone()).to_json().unwrap();
        let back = Object::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), text);
        match back {
            Object::Triskell(u) => prop_assert_eq!(u.canonical(), t.canonical()),
            _ => prop_assert!(false, "not a triskell"),
        }
    }

    #[test]
    fn composition_is_associative(
        f in small_triskell(2, 3),
        g in small_triskell(3, 2),
        h in small_triskell(2, 2),
    ) {
        let g = Triskell::from_edges(f.target().clone(), Carrier::numbered("c", 2), Monoid::Rational, g.edges().to_vec()).unwrap();
        let h = Triskell::from_edges(g.target().clone(), Carrier::numbered("d", 2), Monoid::Rational, h.edges().to_vec()).unwrap();
        let l = f.compose(&g).unwrap().compose(&h).unwrap();
        let r = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(l.canonical(), r.canonical());
    }

    #[test]
    fn identities_are_neutral(f in small_triskell(3, 2)) {
        let l = Triskell::identity(f.source(), Monoid::Rational).compose(&f).unwrap();
        let r = f.compose(&Triskell::identity(f.target(), Monoid::Rational)).unwrap();
        prop_assert_eq!(l.canonical(), f.canonical());
        prop_assert_eq!(r.canonical(), f.canonical());
    }

    #[test]
    fn opposite_edges_vanish_up_to_zero(f in small_triskell(2, 2), n in 1i64..5) {
        let pair = Triskell::new(
            f.source().clone(),
            f.target().clone(),
            Monoid::Rational,
            vec![
                (f.source().get(0).clone(), f.target().get(1).clone(), Weight::int(n)),
                (f.source().get(0).clone(), f.target().get(1).clone(), Weight::int(-n)),
            ],
        ).unwrap();
        prop_assert_eq!(f.union(&pair).unwrap().zero_normalize().unwrap(), f.zero_normalize().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        let ab = a.compose(&b).unwrap().det().unwrap();
        prop_assert_eq!(ab, &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn proofs_print_and_parse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ProofGen::default().proof(&mut rng);
        let back: triskell::Proof = p.to_string().parse().unwrap();
        prop_assert_eq!(back.to_string(), p.to_string());
        let n = normalize(&p).unwrap();
        prop_assert_eq!(n.cut_count(), 0);
        prop_assert_eq!(n.conclusion(), p.conclusion());
    }

    #[test]
    fn contraction_of_an_embedding_is_the_matrix(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = gen::rational_matrix(&mut rng, &Carrier::numbered("r", 3), &Carrier::numbered("c", 2), 0.5);
        prop_assert_eq!(WeightedMatrix::contract(&m.embed(true).unwrap()), m);
    }
}

#[test]
fn point_labels_parse_back() {
    for s in ["x", "L.x", "R.(a,b)", "{1,2}", "[x:2,y:1]", "({},[a:1])"] {
        assert_eq!(p(s).to_string(), s);
    }
}
