//! Reference values, each frozen from an independent computation or a
//! closed-form expression.

use num_rational::BigRational;

use uniserial::alpha::alpha;
use uniserial::corpus;
use uniserial::genprob::{p_exact, p_exact_enum};
use uniserial::maximal::{maximal_avoiding, zeta, zeta_by_classes};
use uniserial::oracle::Oracle;
use uniserial::simple::SimpleGroup;
use uniserial::structure::{chief_series, identify_chief_factor, is_uniserial, unique_minimal_normal};
use uniserial::{Group, Permutation};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn two_generation_probabilities() {
    for (key, value) in [("a5", rat(19, 30)), ("s4", rat(3, 8)), ("s3", rat(1, 2)), ("c2", rat(3, 4))] {
        let g = corpus::load(key).unwrap();
        assert_eq!(p_exact(&g, 2).unwrap().value, value, "{key}");
        assert_eq!(p_exact_enum(&g, 2).unwrap().value, value, "{key}");
        assert_eq!(Oracle::new(&g).unwrap().generation_probability(2), value, "{key}");
    }
}

#[test]
fn zeta_values() {
    let a5 = corpus::load("a5").unwrap();
    let z = zeta(&a5, &a5, 2).unwrap();
    assert_eq!(z.value, rat(7, 15));
    assert_eq!(zeta_by_classes(&a5, &a5, 2).unwrap().value, rat(7, 15));

    let s4 = corpus::load("s4").unwrap();
    let v4 = unique_minimal_normal(&s4).unwrap();
    assert_eq!(v4.order_u64(), Some(4));
    // Only the four conjugates of S3 avoid V4; D8 contains it.
    let avoid = maximal_avoiding(&s4, &v4).unwrap();
    assert_eq!(avoid.iter().map(|c| (c.order, c.class_length)).collect::<Vec<_>>(), vec![(6, 4)]);
    assert_eq!(zeta(&s4, &v4, 2).unwrap().value, rat(1, 4));

    let c2 = corpus::load("c2").unwrap();
    assert_eq!(zeta(&c2, &c2, 3).unwrap().value, rat(1, 8));
}

#[test]
fn chief_factors_of_s4() {
    let s4 = corpus::load("s4").unwrap();
    assert!(is_uniserial(&s4).unwrap());
    let labels: Vec<String> = chief_series(&s4).unwrap().factors.iter().map(|f| f.label()).collect();
    assert_eq!(labels, ["C2", "C3", "C2^2"]);
    assert!(!is_uniserial(&corpus::load("v4").unwrap()).unwrap());
}

#[test]
fn alpha_values() {
    let a = alpha(&SimpleGroup::Cyclic(7)).unwrap().alpha;
    assert!(a.contains(7.0));
    let a5 = alpha(&"A:5".parse().unwrap()).unwrap().alpha;
    assert!((a5.mid() - 1.0985).abs() < 1e-3);
    let m11 = alpha(&"Sp:M11".parse().unwrap()).unwrap().alpha;
    assert!((m11.mid() - 1.98).abs() < 1e-2);
}

#[test]
fn a8_is_recognized_by_order() {
    let a8 = Group::alternating(8);
    let trivial = a8.subgroup(Vec::new()).unwrap();
    assert_eq!(identify_chief_factor(&a8, &trivial).unwrap(), (SimpleGroup::Alternating(8), 1));
}

// F_4 = {0, 1, w, w + 1} encoded as 0..4; addition is xor.
fn f4_mul(a: u8, b: u8) -> u8 {
    const LOG: [u8; 4] = [0, 0, 1, 2];
    if a == 0 || b == 0 {
        return 0;
    }
    let e = (LOG[a as usize] + LOG[b as usize]) % 3;
    [1, 2, 3][e as usize]
}

fn psl34_on_points() -> Group {
    let mut points: Vec<[u8; 3]> = Vec::new();
    for x in 0..64u8 {
        let v = [x >> 4, (x >> 2) & 3, x & 3];
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            points.push(v);
        }
    }
    let normalize = |v: [u8; 3]| {
        let lead = *v.iter().find(|&&c| c != 0).unwrap();
        let inv = (1..4).find(|&i| f4_mul(lead, i) == 1).unwrap();
        v.map(|c| f4_mul(c, inv))
    };
    let mut gens = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        for t in [1u8, 2] {
            // row vector times the transvection I + t E_ij
            let images = points
                .iter()
                .map(|v| {
                    let mut w = *v;
                    w[j] ^= f4_mul(v[i], t);
                    points.iter().position(|p| *p == normalize(w)).unwrap() as u32
                })
                .collect();
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    Group::new(points.len(), gens).unwrap()
}

#[test]
fn psl34_shares_the_order_of_a8() {
    let g = psl34_on_points();
    assert_eq!((g.degree(), g.order_u64()), (21, Some(20160)));
    let trivial = g.subgroup(Vec::new()).unwrap();
    let (t, n) = identify_chief_factor(&g, &trivial).unwrap();
    assert_eq!(n, 1);
    assert_ne!(t, SimpleGroup::Alternating(8));
    assert_eq!(t.to_string(), "PSL3(4)");
}
