use minorgf::series::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const N: usize = 25;

fn te(v: &[i64]) -> TruncatedEGF {
    TruncatedEGF::from_ints(v)
}

fn two_e_minus_one(a: &TruncatedEGF) -> TruncatedEGF {
    a.exp().unwrap().scale(&rat(2)).add_const(&rat(-1))
}

#[test]
fn network_series_basics() {
    let sp = sp_networks(N).unwrap();
    assert_eq!(sp.s.coeff(0), &rat(0));
    assert_eq!(sp.p.coeff(0), &rat(0));
    assert_eq!(sp.d.counts().unwrap()[..2], [BigInt::from(1), BigInt::from(2)]);
    assert!(sp.d.coeffs().iter().all(|c| c >= &rat(0)));
}

#[test]
fn cayley_coefficients() {
    let r = cayley(12);
    for n in 1..=12usize {
        let want = BigRational::new(BigInt::from(n).pow(n as u32 - 1), factorial(n));
        assert_eq!(r.coeff(n), &want, "n={n}");
    }
}

#[test]
fn fan_closed_forms() {
    for k in 2..=3 {
        assert_eq!(fan_bivariate(k, N).unwrap(), fan_closed_form(k, N).unwrap());
    }
    // three paths with two leaf edges to the root and an optional middle edge
    let f3 = fan_bivariate(3, 6).unwrap();
    let y4 = Poly::monomial(rat(3), 4);
    assert_eq!(f3.coeff(3), &y4.add(&Poly::monomial(rat(3), 5)));
}

#[test]
fn edge_substitution_matches_direct_shape_evaluation() {
    let sp = sp_networks(14).unwrap();
    for k in 2..=5 {
        let via_fan = fan_bivariate(k, 14).unwrap().substitute(&sp.d);
        assert_eq!(via_fan, b_series_from(k, &sp).unwrap(), "k={k}");
    }
}

#[test]
fn b_series_small_values() {
    assert_eq!(b_series(1, 2).unwrap().counts().unwrap(), vec![0.into(), 1.into(), BigInt::from(2)]);
    let b2 = b_series(2, N).unwrap();
    assert_eq!(b2.coeff(2), &rat(1));
    let d = sp_networks(N).unwrap().d;
    let xd2 = d.mul(&d).mul_x_pow(1).truncate(N);
    let closed = d.pow(3).mul(&TruncatedEGF::one(N).sub(&xd2).inverse().unwrap()).mul_x_pow(2).truncate(N);
    assert_eq!(b2, closed);
}

#[test]
fn cascade_matches_explicit_three_colour_system() {
    let c = a_c_cascade(3, 16).unwrap();
    let (b1, b2, b3) = (&c.b[0], &c.b[1], &c.b[2]);
    let (ar, arg, argb) = (&c.a[0], &c.a[1], &c.a[2]);
    let (hr, hrg, hrgb) = (&c.ahat[0], &c.ahat[1], &c.ahat[2]);
    let e = |s: &TruncatedEGF| s.exp().unwrap();

    assert_eq!(hr, &two_e_minus_one(ar));
    let hrg_want = e(&arg.add(&ar.scale(&rat(2)))).scale(&rat(4)).sub(&e(ar).scale(&rat(4))).add_const(&rat(1));
    assert_eq!(hrg, &hrg_want);
    let hrgb_want = e(&argb.add(&arg.scale(&rat(3))).add(&ar.scale(&rat(3))))
        .scale(&rat(8))
        .sub(&e(&arg.add(&ar.scale(&rat(2)))).scale(&rat(12)))
        .add(&e(ar).scale(&rat(6)))
        .add_const(&rat(-1));
    assert_eq!(hrgb, &hrgb_want);

    assert_eq!(ar, &b1.mul(hr));
    assert_eq!(arg, &b1.mul(hrg).add(&b2.mul(hr).mul(hr)));
    let rgb_want = b1.mul(hrgb).add(&b2.mul(hr).mul(hrg).scale(&rat(3))).add(&b3.mul(hr).mul(hr).mul(hr));
    assert_eq!(argb, &rgb_want);
}

#[test]
fn one_colour_closed_form() {
    let c = a_c_cascade(1, N).unwrap();
    let b1 = &c.b[0];
    let arg = b1.mul(&b1.neg().exp().unwrap()).scale(&rat(2));
    let want = tree_function_of(&arg).unwrap().sub(b1);
    assert_eq!(c.a[0], want);
}

#[test]
fn tree_function_arguments_match_hand_derived_forms() {
    let c = a_c_cascade(3, 16).unwrap();
    let (b1, b2, b3) = (&c.b[0], &c.b[1], &c.b[2]);
    let ar = &c.a[0];
    let hr = two_e_minus_one(ar);
    let e2_arg = ar
        .scale(&rat(2))
        .sub(&ar.exp().unwrap().scale(&rat(4)).add_const(&rat(-1)).mul(b1))
        .add(&hr.mul(&hr).mul(b2));
    let e2 = b1.mul(&e2_arg.exp().unwrap()).scale(&rat(4));
    assert_eq!(c.steps[1].e, e2);

    let hrg = &c.ahat[1];
    let ex1 = hr.mul(hrg).mul(b2).scale(&rat(3)).add(&hr.mul(&hr).mul(&hr).mul(b3));
    let ex2 = b1.neg().add(&hr.mul(&hr).mul(b2).scale(&rat(3)));
    let e3 = b1.mul(&ex1.add(&ex2).exp().unwrap()).scale(&rat(8));
    assert_eq!(c.steps[2].e, e3);

    for j in 0..3 {
        let st = &c.steps[j];
        assert_eq!(c.a[j], tree_function_of(&st.e).unwrap().add(&st.q), "j={}", j + 1);
    }
}

/// Set partitions of `{0..n}` as block bitmasks.
fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in set_partitions(n - 1) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i] |= 1 << (n - 1);
            out.push(q);
        }
        let mut q = p.clone();
        q.push(1 << (n - 1));
        out.push(q);
    }
    out
}

#[test]
fn cascade_agrees_with_subset_and_set_partition_sums() {
    let l = 4;
    let c = a_c_cascade(l, 10).unwrap();
    let a_of = |s: u32| c.a[s.count_ones() as usize - 1].clone();
    for j in 1..=l {
        let full = (1u32 << j) - 1;
        // Â_C = Σ_{S ⊆ C} (-1)^{|C|-|S|} 2^{|S|} exp(Σ_{∅≠T⊆S} A_T)
        let mut hat = TruncatedEGF::zero(10);
        for s in 0..=full {
            let mut inner = TruncatedEGF::zero(10);
            let mut t = s;
            while t > 0 {
                inner = inner.add(&a_of(t));
                t = (t - 1) & s;
            }
            let sign = if (j as u32 - s.count_ones()) % 2 == 0 { 1 } else { -1 };
            hat = hat.add(&inner.exp().unwrap().scale(&rat(sign << s.count_ones())));
        }
        assert_eq!(hat, c.ahat[j - 1], "Â_{j}");
        let mut a = TruncatedEGF::zero(10);
        for p in set_partitions(j) {
            let prod = p.iter().fold(c.b[p.len() - 1].clone(), |acc, &blk| acc.mul(&c.ahat[blk.count_ones() as usize - 1]));
            a = a.add(&prod);
        }
        assert_eq!(a, c.a[j - 1], "A_{j}");
    }
}

#[test]
fn leaf_marked_trees() {
    let r = cayley_leaf(N).unwrap();
    assert_eq!(r.coeff(1), &Poly::y());
    assert_eq!(r.coeff(2), &Poly::monomial(rat(1), 2));
    assert_eq!(r.eval_y(&rat(1)), cayley(N));
    let rt = cayley_leaf_tilde(N).unwrap();
    assert_eq!(rt.eval_y(&rat(1)), cayley(N));
}

#[test]
fn tree_substitution_specialisations() {
    let one = TruncatedEGF::one(15);
    let ts = tree_substitution(&one, &one, &one, 15).unwrap();
    assert_eq!(ts.aprime.eval_y(&rat(1)), cayley(15));
    assert_eq!(ts.aprime.eval_y(&rat(1)).coeff(1), &rat(1));
    // L = I collapses f to s x D I, so A' = R(s x D I)/D
    let d = sp_networks(12).unwrap().d;
    let i = TruncatedEGF::x(12).exp().unwrap();
    let ts = tree_substitution(&d, &i, &i, 12).unwrap();
    let f = BivariatePoly::lift(&d.mul(&i)).mul_x_pow(1).truncate(12).mul_coeff(&Poly::y());
    let r = tree_function_of(&f).unwrap();
    assert_eq!(ts.a2, r);
    assert_eq!(ts.aprime, r.mul(&BivariatePoly::lift(&d.inverse().unwrap())));
}

#[test]
fn tree_substitution_fixed_point() {
    let sp = sp_networks(15).unwrap();
    let l = TruncatedEGF::x(15).add_const(&rat(1));
    let ts = tree_substitution(&sp.d, &sp.p.add_const(&rat(1)), &l, 15).unwrap();
    let lift = BivariatePoly::lift;
    let sx = BivariatePoly::x(15).mul_coeff(&Poly::y());
    let i = sp.p.add_const(&rat(1));
    let shift = sx.mul(&lift(&sp.d)).mul(&lift(&l.sub(&i))).exp().unwrap();
    let rhs = sx.mul(&lift(&sp.d)).mul(&lift(&i)).mul(&shift).mul(&ts.a2.exp().unwrap());
    assert!(ts.a2.sub(&rhs).is_zero());
    assert!(tree_substitution(&TruncatedEGF::zero(5), &l, &l, 5).is_err());
}

#[test]
fn rooted_series_parallel() {
    let f = rooted_sp(N).unwrap();
    assert_eq!(f.coeff(1), &rat(1));
    assert_eq!(f.coeff(2), &rat(1));
    let bp = biconnected_sp(N + 1).unwrap().derive();
    let psi = f.mul(&bp.compose(&f).unwrap().neg().exp().unwrap());
    assert_eq!(psi, TruncatedEGF::x(N));
}

#[test]
fn rootable_rooted_series() {
    let a = rooted_crd3(15).unwrap();
    assert_eq!(a.coeff(0), &rat(0));
    assert_eq!(a.coeff(1), &rat(8));
    assert!(a.coeffs().iter().all(|c| c >= &rat(0)));
}

#[test]
fn outerplanar_networks() {
    let d = outer_network(N).unwrap();
    assert_eq!(d.coeff(0), &rat(1));
    assert_eq!(d.coeff(1), &rat(1));
    let root = te(&[1, -6, 1]).pad(N + 1).sqrt().unwrap();
    let lhs = d.mul_x_pow(1).scale(&rat(4)).add(&root);
    assert_eq!(lhs, te(&[1, 1]).pad(N + 1));
}

#[test]
fn named_lookup() {
    for name in SERIES_NAMES {
        if ["C3root", "A5", "Ahat5", "A4", "Ahat4"].contains(name) {
            continue;
        }
        assert!(named_series(name, 6).is_ok(), "{name}");
    }
    assert!(named_series("nope", 3).is_err());
    assert!(named_series("B7", 3).is_err());
    assert!(named_bivariate("F2", 4).is_ok());
    assert!(named_bivariate("Rleaf", 4).is_ok());
}

#[test]
fn out_of_range_parameters() {
    assert!(fan_bivariate(1, 5).is_err());
    assert!(fan_bivariate(7, 5).is_err());
    assert!(a_c_cascade(0, 5).is_err());
    assert!(a_c_cascade(6, 5).is_err());
}

fn arb_series(order: usize, zero_const: bool) -> impl Strategy<Value = TruncatedEGF> {
    proptest::collection::vec((-20i64..20, 1i64..6), order + 1).prop_map(move |v| {
        let mut c: Vec<BigRational> = v.into_iter().map(|(p, q)| frac(p, q)).collect();
        if zero_const {
            c[0] = rat(0);
        }
        TruncatedEGF::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exp_is_a_homomorphism(f in arb_series(8, true), g in arb_series(8, true)) {
        prop_assert_eq!(f.add(&g).exp().unwrap(), f.exp().unwrap().mul(&g.exp().unwrap()));
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn inverse_and_derivative_rules(f in arb_series(8, false), g in arb_series(8, false)) {
        prop_assume!(f.coeff(0) != &rat(0));
        prop_assert_eq!(f.mul(&f.inverse().unwrap()), TruncatedEGF::one(8));
        prop_assert_eq!(f.mul(&g).derive(), f.derive().mul(&g).add(&f.mul(&g.derive())));
    }

    #[test]
    fn composition_is_associative(f in arb_series(6, false), g in arb_series(6, true), h in arb_series(6, true)) {
        let lhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        let rhs = f.compose(&g).unwrap().compose(&h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Newton on y = x g(y) agrees with the term-by-term recursion.
    #[test]
    fn newton_matches_coefficient_recursion(g in arb_series(7, false)) {
        let n = 7;
        let y = newton_implicit(
            |y: &TruncatedEGF, p| {
                let gy = g.truncate(p).compose(&y.truncate(p)).unwrap();
                let dgy = g.derive().pad(p).compose(&y.truncate(p)).unwrap();
                Ok((gy.mul_x_pow(1).truncate(p), dgy.mul_x_pow(1).truncate(p)))
            },
            n,
        ).unwrap();
        let mut z = TruncatedEGF::zero(n);
        for _ in 0..=n {
            z = g.compose(&z).unwrap().mul_x_pow(1).truncate(n);
        }
        prop_assert_eq!(y, z);
    }
}
