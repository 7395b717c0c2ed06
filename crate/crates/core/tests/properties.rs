use std::sync::Arc;

use proptest::prelude::*;

use braidcert_core::braid::{
    act_on_loop, act_on_path_in, induced_permutation, reflect_loop, BasedPath, BraidLetter,
    BraidWord,
};
use braidcert_core::certificate::{boundary_word, f_word};
use braidcert_core::fixtures::beta;
use braidcert_core::perm::{word_image, Perm};
use braidcert_core::word::{Alphabet, Letter, Mode, Word};

const STRANDS: usize = 4;

fn gammas() -> Arc<Alphabet> {
    Alphabet::gammas(STRANDS)
}

fn letters(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..STRANDS, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv)),
        0..=max_len,
    )
}

fn word(mode: Mode, max_len: usize) -> impl Strategy<Value = Word> {
    letters(max_len).prop_map(move |ls| Word::reduce(&gammas(), mode, ls).unwrap())
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Free), Just(Mode::Involutory)]
}

fn braid(max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..STRANDS, any::<bool>()), 0..=max_len).prop_map(|ls| {
        let letters = ls
            .into_iter()
            .map(|(index, inverse)| BraidLetter { index, inverse })
            .collect();
        BraidWord::new(STRANDS, letters).unwrap()
    })
}

fn perm4() -> impl Strategy<Value = Perm> {
    prop::sample::select(Perm::all(STRANDS))
}

/// Independent reduction oracle: repeatedly delete adjacent cancelling pairs
/// until nothing changes.
fn naive_reduce(mut ls: Vec<Letter>, mode: Mode) -> Vec<Letter> {
    if mode == Mode::Involutory {
        ls = ls.into_iter().map(|l| Letter::pos(l.generator)).collect();
    }
    loop {
        let hit = ls.windows(2).position(|w| match mode {
            Mode::Free => w[0].generator == w[1].generator && w[0].inverse != w[1].inverse,
            Mode::Involutory => w[0].generator == w[1].generator,
        });
        match hit {
            Some(i) => {
                ls.drain(i..i + 2);
            }
            None => return ls,
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_matches_naive_oracle(ls in letters(24), mode in mode()) {
        let w = Word::reduce(&gammas(), mode, ls.clone()).unwrap();
        let expected = naive_reduce(ls, mode);
        prop_assert_eq!(w.letters(), expected.as_slice());
    }

    #[test]
    fn reduce_is_idempotent(w in word(Mode::Free, 20), mode in mode()) {
        let w = w.to_mode(mode);
        let again = Word::reduce(&gammas(), mode, w.letters().to_vec()).unwrap();
        prop_assert_eq!(again, w);
    }

    #[test]
    fn inverse_cancels(w in word(Mode::Free, 20), mode in mode()) {
        let w = w.to_mode(mode);
        prop_assert!(w.multiply(&w.invert()).unwrap().is_identity());
        prop_assert!(w.invert().multiply(&w).unwrap().is_identity());
    }

    #[test]
    fn substitute_is_homomorphic(
        a in word(Mode::Free, 10),
        b in word(Mode::Free, 10),
        images in prop::collection::vec(word(Mode::Free, 4), STRANDS),
    ) {
        let lhs = a.multiply(&b).unwrap().substitute(&images).unwrap();
        let rhs = a.substitute(&images).unwrap().multiply(&b.substitute(&images).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exponent_vector_is_additive(a in word(Mode::Free, 12), b in word(Mode::Free, 12)) {
        let sum = &a.exponent_vector().unwrap() + &b.exponent_vector().unwrap();
        prop_assert_eq!(a.multiply(&b).unwrap().exponent_vector().unwrap(), sum);
    }

    #[test]
    fn word_display_round_trips(w in word(Mode::Free, 16), mode in mode()) {
        let w = w.to_mode(mode);
        prop_assert_eq!(Word::parse(&w.to_string(), &gammas(), mode).unwrap(), w);
    }

    #[test]
    fn braid_display_round_trips(b in braid(12)) {
        prop_assert_eq!(BraidWord::parse(&b.to_string(), STRANDS).unwrap(), b);
    }

    #[test]
    fn perm_display_round_trips(p in perm4()) {
        prop_assert_eq!(Perm::parse_cycles(&p.to_string(), STRANDS).unwrap(), p);
    }

    #[test]
    fn braid_times_inverse_acts_trivially(b in braid(8), w in word(Mode::Free, 10), mode in mode()) {
        let w = w.to_mode(mode);
        let bb = b.concat(&b.inverse());
        prop_assert_eq!(act_on_loop(&bb, &w, mode).unwrap(), w.clone());
        let bb = b.inverse().concat(&b);
        prop_assert_eq!(act_on_loop(&bb, &w, mode).unwrap(), w);
    }

    #[test]
    fn action_is_homomorphic_in_the_word(
        b in braid(8),
        x in word(Mode::Free, 8),
        y in word(Mode::Free, 8),
        mode in mode(),
    ) {
        let (x, y) = (x.to_mode(mode), y.to_mode(mode));
        let lhs = act_on_loop(&b, &x.multiply(&y).unwrap(), mode).unwrap();
        let rhs = act_on_loop(&b, &x, mode).unwrap().multiply(&act_on_loop(&b, &y, mode).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_composes(a in braid(6), b in braid(6), w in word(Mode::Free, 8)) {
        // the rightmost letter acts first
        let ab = a.concat(&b);
        let step = act_on_loop(&a, &act_on_loop(&b, &w, Mode::Free).unwrap(), Mode::Free).unwrap();
        prop_assert_eq!(act_on_loop(&ab, &w, Mode::Free).unwrap(), step);
    }

    #[test]
    fn path_and_loop_actions_agree(b in braid(12), j in 1..=STRANDS, mode in mode()) {
        // b(gamma_j) = w gamma_t w^-1 where b(rho_j) = w rho_t
        let alphabet = gammas();
        let p = act_on_path_in(&b, &BasedPath::rho(&alphabet, j, mode), mode).unwrap();
        let gamma_t = Word::generator(&alphabet, p.terminal - 1, mode).unwrap();
        let expected = gamma_t.conjugate_by(&p.prefix).unwrap();
        let gamma_j = Word::generator(&alphabet, j - 1, mode).unwrap();
        prop_assert_eq!(act_on_loop(&b, &gamma_j, mode).unwrap(), expected);
    }

    #[test]
    fn abelianized_action_permutes_exponents(b in braid(12), w in word(Mode::Free, 12)) {
        let alphabet = gammas();
        let image = act_on_loop(&b, &w, Mode::Free).unwrap().exponent_vector().unwrap();
        let before = w.exponent_vector().unwrap();
        let mut expected = vec![0; STRANDS];
        for j in 1..=STRANDS {
            let t = act_on_path_in(&b, &BasedPath::rho(&alphabet, j, Mode::Free), Mode::Free)
                .unwrap()
                .terminal;
            expected[t - 1] += before.as_slice()[j - 1];
        }
        prop_assert_eq!(image.as_slice(), expected.as_slice());
    }

    #[test]
    fn strand_permutation_matches_path_terminals(b in braid(12)) {
        let alphabet = gammas();
        let perm = induced_permutation(&b, false);
        let terminals: Vec<usize> = (1..=STRANDS)
            .map(|j| act_on_path_in(&b, &BasedPath::rho(&alphabet, j, Mode::Free), Mode::Free).unwrap().terminal)
            .collect();
        let forward: Vec<usize> = (1..=STRANDS).map(|j| perm.apply(j)).collect();
        let backward: Vec<usize> = (1..=STRANDS).map(|j| perm.inverse().apply(j)).collect();
        prop_assert!(terminals == forward || terminals == backward);
    }

    #[test]
    fn reflection_is_an_involution(w in word(Mode::Involutory, 16)) {
        let w = w.to_mode(Mode::Involutory);
        prop_assert_eq!(reflect_loop(&reflect_loop(&w).unwrap()).unwrap(), w);
    }

    #[test]
    fn word_image_is_homomorphic(
        a in word(Mode::Free, 10),
        b in word(Mode::Free, 10),
        images in prop::collection::vec(perm4(), STRANDS),
    ) {
        let lhs = word_image(&a.multiply(&b).unwrap(), &images).unwrap();
        let rhs = word_image(&a, &images).unwrap().compose(&word_image(&b, &images).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn f_word_ignores_cancelling_pairs(pos in 0..=6usize, index in 1..STRANDS, inverse in any::<bool>()) {
        let base = beta();
        let mut letters = base.letters().to_vec();
        let pos = pos.min(letters.len());
        let l = BraidLetter { index, inverse };
        letters.splice(pos..pos, [l, BraidLetter { index, inverse: !inverse }]);
        let padded = BraidWord::new(STRANDS, letters).unwrap();
        prop_assert_eq!(f_word(&padded).unwrap(), f_word(&base).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn boundary_word_is_invariant(b in braid(12), mode in mode()) {
        let u = boundary_word(&gammas()).to_mode(mode);
        prop_assert_eq!(act_on_loop(&b, &u, mode).unwrap(), u);
    }
}
