use isobar_core::cyclotomic::{ComplexApprox, Cyclotomic, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONDUCTORS: [u32; 7] = [1, 3, 4, 5, 8, 9, 15];

fn random_element(rng: &mut ChaCha8Rng) -> Cyclotomic {
    let n = CONDUCTORS[rng.gen_range(0..CONDUCTORS.len())];
    let terms: Vec<(i64, Rational)> = (0..rng.gen_range(1..4))
        .map(|_| {
            let k = rng.gen_range(0..n as i64);
            let num: i64 = rng.gen_range(-6..=6);
            let den: i64 = rng.gen_range(1..=4);
            (k, Rational::new(num.into(), den.into()))
        })
        .collect();
    Cyclotomic::from_terms(n, &terms)
}

fn close(a: ComplexApprox, b: ComplexApprox) -> bool {
    (a.re - b.re).abs() < 1e-9 && (a.im - b.im).abs() < 1e-9
}

#[test]
fn field_axioms_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let c = random_element(&mut rng);
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert!((&a - &a).is_zero());
        assert_eq!(&a * &Cyclotomic::one(), a);
        if !a.is_zero() {
            assert!((&a * &a.inverse().unwrap()).is_one());
        }
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }
}

#[test]
fn arithmetic_agrees_with_floating_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let (x, y) = (a.approx(), b.approx());
        let sum = ComplexApprox { re: x.re + y.re, im: x.im + y.im };
        let prod = ComplexApprox { re: x.re * y.re - x.im * y.im, im: x.re * y.im + x.im * y.re };
        assert!(close((&a + &b).approx(), sum));
        assert!(close((&a * &b).approx(), prod));
        assert!(close(a.conj().approx(), ComplexApprox { re: x.re, im: -x.im }));
    }
}

#[test]
fn canonical_form_is_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let a = random_element(&mut rng);
        let text = a.to_string();
        let back: Cyclotomic = text.parse().unwrap();
        assert_eq!(back, a, "{text}");
        assert_eq!(back.to_string(), text);
        // writing over a larger conductor and reducing gives the same value
        let m = a.conductor() * 4;
        assert_eq!(a.embed(m).reduce_conductor(), a);
        assert_eq!(a.embed(a.conductor()).reduce_conductor(), a);
    }
}

#[test]
fn galois_action_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        for k in [7i64, 11, 13] {
            assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
            assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        }
    }
}

#[test]
fn norm_of_sums_of_roots() {
    // N(1 - ζ_p) = p
    for p in [3u32, 5, 7] {
        let z = &Cyclotomic::one() - &Cyclotomic::root_of_unity(p, 1);
        assert_eq!(z.norm(), Rational::from_integer(p.into()));
    }
}
