use proptest::prelude::*;
use rconf_core::braid::{aij_word, artin_act, braid_equal, fmt_permutation, garside, BraidWord, GroupSpec};
use rconf_core::Error;

fn w(n: usize, text: &str) -> BraidWord {
    BraidWord::parse(n, text).unwrap()
}

fn eq(a: &BraidWord, b: &BraidWord) -> bool {
    braid_equal(a, b).unwrap()
}

fn prod(ws: &[BraidWord]) -> BraidWord {
    ws.iter().skip(1).fold(ws[0].clone(), |acc, x| acc.concat(x).unwrap())
}

fn a(i: usize, j: usize) -> BraidWord {
    aij_word(i, j, 3).unwrap()
}

#[test]
fn artin_act_examples() {
    let f = artin_act(&w(2, "x1"));
    assert_eq!(f.rank, 2);
    assert_eq!(f.images, vec![vec![1, 2, -1], vec![1]]);
    assert_eq!(artin_act(&w(3, "x1 x2 x1")), artin_act(&w(3, "x2 x1 x2")));
    let u = w(4, "x1 x3^-1 x2 x2 x1^-1");
    assert!(artin_act(&u.concat(&u.inverse()).unwrap()).is_identity());
}

#[test]
fn braid_equal_examples() {
    assert!(eq(&w(3, "x1 x2 x1"), &w(3, "x2 x1 x2")));
    assert!(!eq(&w(3, "x1 x2"), &w(3, "x2 x1")));
    assert!(eq(&BraidWord::identity(3), &w(3, "x1 x1^-1")));
    assert!(matches!(braid_equal(&w(3, "x1"), &w(4, "x1")), Err(Error::StrandMismatch { left: 3, right: 4 })));
}

#[test]
fn permutation_examples() {
    assert_eq!(fmt_permutation(&garside(3).unwrap().permutation()), "(13)");
    for i in 1..=4 {
        let p = w(5, &format!("x{i}")).permutation();
        assert_eq!(fmt_permutation(&p), format!("({}{})", i, i + 1));
    }
    assert!(a(1, 2).permutation().iter().enumerate().all(|(i, &p)| i == p));
}

#[test]
fn aij_examples() {
    assert_eq!(a(1, 3), w(3, "x2 x1 x1 x2^-1"));
    assert_eq!(a(1, 2), w(3, "x1 x1"));
    assert_eq!(a(2, 3), w(3, "x2 x2"));
    for n in 2..=6 {
        for i in 1..n {
            for j in i + 1..=n {
                let p = aij_word(i, j, n).unwrap().permutation();
                assert!(p.iter().enumerate().all(|(k, &v)| k == v), "A_{i}{j} in B_{n}");
            }
        }
    }
    assert!(matches!(aij_word(2, 2, 3), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(aij_word(1, 4, 3), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn garside_examples() {
    assert_eq!(garside(3).unwrap(), w(3, "x1 x2 x1"));
    assert_eq!(garside(2).unwrap(), w(2, "x1"));
    assert_eq!(garside(4).unwrap(), w(4, "x1 x2 x1 x3 x2 x1"));
    assert!(eq(&garside(3).unwrap().pow(2), &w(3, "x1 x2").pow(3)));
    assert!(matches!(garside(1), Err(Error::IndexOutOfRange(_)) | Err(Error::Precondition(_))));
}

#[test]
fn decide_equal_examples() {
    let rb = GroupSpec::preset("RB3").unwrap();
    let p = |s: &str| rb.parse_word(s).unwrap();
    assert!(rb.decide_equal(&p("gamma alpha"), &p("beta gamma")).unwrap());
    assert!(rb.decide_equal(&p("γ β γ^-1"), &p("α")).unwrap());
    assert!(!rb.decide_equal(&p("alpha beta"), &p("beta alpha")).unwrap());
    let f2 = GroupSpec::preset("F2").unwrap();
    assert!(f2.decide_equal(&f2.parse_word("a a^-1").unwrap(), &[]).unwrap());
    assert!(matches!(f2.parse_word("a z"), Err(Error::UnknownGenerator(_))));
    let b3 = GroupSpec::preset("B3").unwrap();
    let q = |s: &str| b3.parse_word(s).unwrap();
    assert!(b3.decide_equal(&q("x1 x2 x1"), &q("x2 x1 x2")).unwrap());
}

#[test]
fn exponent_sum_examples() {
    assert_eq!(w(3, "x1 x2 x1").exponent_sum(), vec![2, 1]);
    let u = w(3, "x1 x2^-1 x1");
    assert_eq!(u.concat(&u.inverse()).unwrap().exponent_sum(), vec![0, 0]);
    let d2 = w(3, "x1 x2 x1 x2 x1 x2");
    assert!(eq(&d2, &garside(3).unwrap().pow(2)));
    assert_eq!(d2.exponent_sum(), vec![3, 3]);
    assert_eq!(garside(3).unwrap().pow(2).exponent_sum().iter().sum::<i64>(), 6);
}

#[test]
fn rewriting_identities() {
    let d = garside(3).unwrap();
    let lhs = prod(&[w(3, "x2^-1"), d.clone(), w(3, "x2 x1")]);
    assert!(eq(&lhs, &prod(&[a(2, 3).inverse(), a(1, 3), a(2, 3), a(1, 2)])));
    let lhs = prod(&[w(3, "x1^-1"), d.clone(), w(3, "x1 x2")]);
    assert!(eq(&lhs, &prod(&[a(1, 3), a(2, 3)])));
    let lhs = prod(&[w(3, "x1 x2 x1"), d.clone()]);
    assert!(eq(&lhs, &prod(&[a(1, 2), a(1, 3), a(2, 3)])));
    assert!(eq(&w(3, "x2^-1 x2^-1"), &a(2, 3).inverse()));
}

#[test]
fn qp_table_identities() {
    let rows: [(&str, &str, Vec<BraidWord>); 6] = [
        ("alpha_1", "x1 x1", vec![a(1, 2)]),
        ("alpha_0", "x1 x2 x1 x2 x1^-1 x2^-1", vec![a(1, 2)]),
        ("alpha_-1/2", "x1 x2 x1 x2 x1 x2^-1", vec![a(1, 2), a(1, 3)]),
        ("alpha_-1", "x1 x2 x2 x1", vec![a(1, 2), a(1, 3)]),
        ("alpha_-2", "x1 x2 x1 x1 x2 x1", vec![a(1, 2), a(1, 3), a(2, 3)]),
        ("beta", "x1 x2 x1 x2 x1 x2", vec![a(1, 2), a(1, 3), a(2, 3)]),
    ];
    for (name, qp, aij) in rows {
        assert!(eq(&w(3, qp), &prod(&aij)), "{name}");
    }
    assert!(eq(&w(3, "x1 x2 x2 x1"), &prod(&[a(1, 2), a(1, 3)])));
    let d2 = garside(3).unwrap().pow(2);
    assert!(eq(&w(3, "x2 x1 x2 x2 x1 x2"), &d2));
    assert!(eq(&w(3, "x1 x2").pow(3), &w(3, "x2 x1").pow(3)));
}

fn word(n: usize, max: usize) -> impl Strategy<Value = BraidWord> {
    let g = n as i32 - 1;
    proptest::collection::vec((1..=g, any::<bool>()), 0..=max)
        .prop_map(move |v| BraidWord::new(n, v.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap())
}

fn relator(n: usize) -> impl Strategy<Value = BraidWord> {
    let g = n as i32 - 1;
    (1..g, 1..=g, 1..=g, any::<bool>()).prop_map(move |(i, j, k, braid)| {
        let letters = if braid {
            vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]
        } else if (j - k).abs() >= 2 {
            vec![j, k, -j, -k]
        } else {
            vec![j, -j]
        };
        BraidWord::new(n, letters).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn artin_act_is_homomorphism(u in word(5, 12), v in word(5, 12)) {
        let whole = artin_act(&u.concat(&v).unwrap());
        prop_assert_eq!(whole, artin_act(&u).compose(&artin_act(&v)));
    }

    #[test]
    fn relator_insertion_preserves_class(u in word(5, 16), r in relator(5), at in 0usize..=16) {
        let k = at.min(u.len());
        let mut letters = u.letters()[..k].to_vec();
        letters.extend_from_slice(r.letters());
        letters.extend_from_slice(&u.letters()[k..]);
        let v = BraidWord::new(5, letters).unwrap();
        prop_assert!(braid_equal(&u, &v).unwrap());
    }

    #[test]
    fn inverse_cancels(u in word(4, 20)) {
        prop_assert!(artin_act(&u.concat(&u.inverse()).unwrap()).is_identity());
        prop_assert!(u.concat(&u.inverse()).unwrap().exponent_sum().iter().all(|&e| e == 0));
    }

    #[test]
    fn equal_braids_share_permutation(u in word(4, 10), r in relator(4)) {
        let v = u.concat(&r).unwrap();
        prop_assert_eq!(u.permutation(), v.permutation());
    }
}
