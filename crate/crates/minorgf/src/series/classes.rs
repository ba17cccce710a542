use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::cascade::{ahat, cascade_rhs, cascade_step, CascadeRing, CascadeStep};
use super::{frac, newton_implicit, rat, BivariatePoly, Coeff, Poly, Series, TruncatedEGF};
use crate::oracle::{enumerate_ut_trees, UtShape};
use crate::{Error, Result};

pub const DEFAULT_ORDER: usize = 30;
pub const MAX_CASCADE: usize = 5;

impl<C: Coeff> CascadeRing for Series<C> {
    fn add(&self, o: &Self) -> Self {
        Series::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Series::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Series::mul(self, o)
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat(k))
    }
    fn exp(&self) -> Result<Self> {
        Series::exp(self)
    }
    fn zero_like(&self) -> Self {
        Series::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Series::one(self.order())
    }
}

fn check_identity<C: Coeff>(what: &str, lhs: &Series<C>, rhs: &Series<C>) -> Result<()> {
    let diff = lhs.sub(rhs);
    match diff.valuation() {
        None => Ok(()),
        Some(n) => Err(Error::IdentityFailed(format!("{what}: first discrepancy at x^{n}"))),
    }
}

/// Series-parallel networks: all (`D`), series (`S`) and parallel (`P`).
#[derive(Clone, Debug, PartialEq)]
pub struct SpNetworks {
    pub d: TruncatedEGF,
    pub s: TruncatedEGF,
    pub p: TruncatedEGF,
}

fn p_of_s(s: &TruncatedEGF) -> Result<TruncatedEGF> {
    Ok(s.exp()?.scale(&rat(2)).add_const(&rat(-2)).sub(s))
}

/// Solve `S = x(P+1)^2/(1-x(P+1))`, `P = 2e^S - 2 - S` and check the two
/// closed identities satisfied by `D = 1 + S + P`.
pub fn sp_networks(order: usize) -> Result<SpNetworks> {
    let s = newton_implicit(
        |s: &TruncatedEGF, p| {
            let pp = p_of_s(s)?.add_const(&rat(1));
            let xp = pp.mul_x_pow(1).truncate(p);
            let inv = TruncatedEGF::one(p).sub(&xp).inverse()?;
            let val = xp.mul(&pp).mul(&inv);
            // dS/dP = X(2-X)/(1-X)^2 with X = x(P+1); dP/dS = 2e^S - 1
            let ds_dp = xp.mul(&xp.neg().add_const(&rat(2))).mul(&inv).mul(&inv);
            let dp_ds = s.exp()?.scale(&rat(2)).add_const(&rat(-1));
            Ok((val, ds_dp.mul(&dp_ds)))
        },
        order,
    )?;
    let p = p_of_s(&s)?;
    let d = s.add(&p).add_const(&rat(1));
    let xd = d.mul_x_pow(1).truncate(order);
    let one_xd = xd.add_const(&rat(1));
    let lhs = xd.mul(&d).mul(&one_xd.inverse()?);
    let rhs = d.add_const(&rat(1)).scale(&frac(1, 2)).log()?;
    check_identity("x D^2/(1+xD) = ln((1+D)/2)", &lhs, &rhs)?;
    check_identity("P + 1 = D/(1+xD)", &p.add_const(&rat(1)), &d.mul(&one_xd.inverse()?))?;
    Ok(SpNetworks { d, s, p })
}

/// Closed form `x^a y^(e+f) (1+y)^g (1-xy^2)^(-e)` of one tree shape after
/// subdividing its edges and attaching the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ShapeGF {
    pub a: usize,
    pub e: usize,
    pub f: usize,
    pub g: usize,
}

impl ShapeGF {
    pub fn of(s: &UtShape) -> Self {
        ShapeGF { a: s.vertices, e: s.edge_count(), f: s.leaves(), g: s.optional_root_edges() }
    }

    /// Evaluate with `y` replaced by a series `w` (`w` may have nonzero
    /// constant term).
    fn eval<C: Coeff>(&self, w: &Series<C>, order: usize) -> Result<Series<C>> {
        if self.a > order {
            return Ok(Series::zero(order));
        }
        let m = order - self.a;
        let w = w.truncate(m);
        let xw2 = w.mul(&w).mul_x_pow(1).truncate(m);
        let sub = Series::one(m).sub(&xw2).inverse()?;
        let one_w = w.add_const(&C::one());
        let body = w.pow((self.e + self.f) as u32).mul(&one_w.pow(self.g as u32)).mul(&sub.pow(self.e as u32));
        Ok(body.mul_x_pow(self.a))
    }

    pub fn bivariate(&self, order: usize) -> Result<BivariatePoly> {
        let y = BivariatePoly::constant(Poly::y(), order);
        self.eval(&y, order)
    }

    pub fn substituted(&self, d: &TruncatedEGF) -> Result<TruncatedEGF> {
        self.eval(d, d.order())
    }
}

/// Shapes for `k` colours grouped by closed form, with multiplicities.
pub fn shape_census(k: usize) -> Result<BTreeMap<ShapeGF, usize>> {
    let mut m = BTreeMap::new();
    for s in enumerate_ut_trees(k)? {
        *m.entry(ShapeGF::of(&s)).or_insert(0) += 1;
    }
    Ok(m)
}

fn fan_range(k: usize) -> Result<()> {
    if !(2..=6).contains(&k) {
        return Err(Error::OutOfRange(format!("fan classes need 2 <= k <= 6, got {k}")));
    }
    Ok(())
}

/// `F'_k(x, y)` as a sum of shape closed forms; `y` marks edges.
pub fn fan_bivariate(k: usize, order: usize) -> Result<BivariatePoly> {
    fan_range(k)?;
    let mut acc = BivariatePoly::zero(order);
    for (shape, mult) in shape_census(k)? {
        acc = acc.add(&shape.bivariate(order)?.scale(&rat(mult as i64)));
    }
    if k <= 3 {
        check_identity("fan shape sum against closed form", &acc, &fan_closed_form(k, order)?)?;
    }
    Ok(acc)
}

/// Known closed forms of `F'_2` and `F'_3`.
pub fn fan_closed_form(k: usize, order: usize) -> Result<BivariatePoly> {
    let x = BivariatePoly::x(order);
    let y = BivariatePoly::constant(Poly::y(), order);
    let xy2 = x.mul(&y).mul(&y);
    let inv = BivariatePoly::one(order).sub(&xy2).inverse()?;
    match k {
        2 => Ok(x.pow(2).mul(&y.pow(3)).mul(&inv)),
        3 => {
            let lin = xy2.scale(&rat(-2)).add_const(&Poly::scalar(&rat(3)));
            Ok(x.pow(3).mul(&y.pow(4)).mul(&lin).mul(&y.add_const(&Poly::one())).mul(&inv.pow(3)))
        }
        _ => Err(Error::OutOfRange(format!("no closed form for k = {k}"))),
    }
}

/// `B_k` from already computed networks: `B_1 = x(P+1)`, and for `k >= 2`
/// the fan shapes with every edge replaced by a network.
pub fn b_series_from(k: usize, sp: &SpNetworks) -> Result<TruncatedEGF> {
    let order = sp.d.order();
    match k {
        1 => Ok(sp.p.add_const(&rat(1)).mul_x_pow(1).truncate(order)),
        2..=6 => {
            let mut acc = TruncatedEGF::zero(order);
            for (shape, mult) in shape_census(k)? {
                acc = acc.add(&shape.substituted(&sp.d)?.scale(&rat(mult as i64)));
            }
            if k == 2 {
                let d = &sp.d;
                let xd2 = d.mul(d).mul_x_pow(1).truncate(order);
                let closed = d.pow(3).mul(&TruncatedEGF::one(order).sub(&xd2).inverse()?).mul_x_pow(2).truncate(order);
                check_identity("B_2 = x^2 D^3/(1 - x D^2)", &acc, &closed)?;
            }
            Ok(acc)
        }
        _ => Err(Error::OutOfRange(format!("B_k needs 1 <= k <= 6, got {k}"))),
    }
}

pub fn b_series(k: usize, order: usize) -> Result<TruncatedEGF> {
    b_series_from(k, &sp_networks(order)?)
}

/// Rooted Cayley trees, `R = x e^R`.
pub fn cayley(order: usize) -> TruncatedEGF {
    newton_implicit(
        |y: &TruncatedEGF, p| {
            let v = y.exp()?.mul_x_pow(1).truncate(p);
            Ok((v.clone(), v))
        },
        order,
    )
    .expect("tree function equation is contractive")
}

/// `R(e)` for a series with zero constant term.
pub fn tree_function_of<C: Coeff>(e: &Series<C>) -> Result<Series<C>> {
    e.compose_into(&cayley(e.order()))
}

/// Result of the colour cascade for `1..=l` colours.
#[derive(Clone, Debug)]
pub struct Cascade {
    /// `B_1..B_l`.
    pub b: Vec<TruncatedEGF>,
    /// `A_1..A_l`.
    pub a: Vec<TruncatedEGF>,
    /// `Â_1..Â_l`.
    pub ahat: Vec<TruncatedEGF>,
    pub steps: Vec<CascadeStep<TruncatedEGF>>,
}

pub fn a_c_cascade(l: usize, order: usize) -> Result<Cascade> {
    if !(1..=MAX_CASCADE).contains(&l) {
        return Err(Error::OutOfRange(format!("cascade needs 1 <= l <= {MAX_CASCADE}, got {l}")));
    }
    let sp = sp_networks(order)?;
    let b = (1..=l).map(|k| b_series_from(k, &sp)).collect::<Result<Vec<_>>>()?;
    let (mut a, mut hats, mut steps) = (Vec::new(), Vec::new(), Vec::new());
    for j in 1..=l {
        let step = cascade_step(&a, &hats, &b[..j])?;
        let aj = newton_implicit(
            |y: &TruncatedEGF, p| {
                let st = CascadeStep {
                    l: step.l.truncate(p),
                    hat_rest: step.hat_rest.truncate(p),
                    q: step.q.truncate(p),
                    e: step.e.truncate(p),
                };
                let b1 = b[0].truncate(p);
                let top = st.l.add(y).exp()?.scale(&rat(1 << j)).mul(&b1);
                Ok((cascade_rhs(&st, &b1, y, j)?, top))
            },
            order,
        )?;
        a.push(aj);
        hats.push(ahat(&a, &b[0])?);
        steps.push(step);
    }
    Ok(Cascade { b, a, ahat: hats, steps })
}

/// Rooted trees with `z` marking leaves, the root counting as a leaf when
/// its degree is at most one. Built from the fixed point
/// `R~ = xz + x(e^R~ - 1)` and checked against the closed form in the
/// univariate tree function.
pub fn cayley_leaf(order: usize) -> Result<BivariatePoly> {
    let x = BivariatePoly::x(order);
    let z = BivariatePoly::constant(Poly::y(), order);
    let rt = cayley_leaf_tilde(order)?;
    let via_tilde =
        z.mul(&x).add(&z.mul(&x).mul(&rt)).add(&x.mul(&rt.exp()?.sub(&rt).add_const(&Poly::scalar(&rat(-1)))));
    let xz1 = x.mul(&z.add_const(&Poly::scalar(&rat(-1))));
    let r = tree_function_of(&x.mul(&xz1.exp()?))?;
    let closed = r.mul(&xz1.add_const(&Poly::one())).add(&xz1.mul(&xz1)).add(&xz1);
    check_identity("leaf-marked tree closed form", &via_tilde, &closed)?;
    Ok(closed)
}

/// `R~ = xz + x(e^R~ - 1)`: rooted trees with `z` marking leaves, the root
/// counted as a leaf only when alone.
pub fn cayley_leaf_tilde(order: usize) -> Result<BivariatePoly> {
    newton_implicit(
        |y: &BivariatePoly, p| {
            let x = BivariatePoly::x(p);
            let z = BivariatePoly::constant(Poly::y(), p);
            let e = y.exp()?;
            let val = x.mul(&z).add(&x.mul(&e.add_const(&Poly::scalar(&rat(-1)))));
            Ok((val, x.mul(&e)))
        },
        order,
    )
}

/// Trees whose edges, internal vertices and leaves are replaced by objects
/// of three classes, with `s` marking the tree size.
#[derive(Clone, Debug)]
pub struct TreeSubstitution {
    /// `A_2(x, s) = s x D I e^{s x D (L-I)} e^{A_2}`.
    pub a2: BivariatePoly,
    /// Trees rooted at a vertex.
    pub aprime: BivariatePoly,
}

pub fn tree_substitution(
    d: &TruncatedEGF,
    i: &TruncatedEGF,
    l: &TruncatedEGF,
    order: usize,
) -> Result<TreeSubstitution> {
    if d.is_zero() || i.is_zero() || l.is_zero() {
        return Err(Error::Precondition("tree substitution needs nonzero component series".into()));
    }
    let order = order.min(d.order()).min(i.order()).min(l.order());
    let lift = |s: &TruncatedEGF| BivariatePoly::lift(&s.truncate(order));
    let (d, i, l) = (lift(d), lift(i), lift(l));
    let sx = BivariatePoly::x(order).mul_coeff(&Poly::y());
    let l_i = l.sub(&i);
    let shift = sx.mul(&d).mul(&l_i).exp()?;
    let f = sx.mul(&d).mul(&i).mul(&shift);
    let a2 = newton_implicit(
        |y: &BivariatePoly, p| {
            let v = f.truncate(p).mul(&y.exp()?);
            Ok((v.clone(), v))
        },
        order,
    )?;
    check_identity("A_2 fixed point", &a2, &f.mul(&a2.exp()?))?;
    // R(f)/D = s x I e^{s x D (L-I)} e^{A_2}, since A_2 = R(f) = f e^{A_2}
    let r_over_d = sx.mul(&i).mul(&shift).mul(&a2.exp()?);
    let sxl = sx.mul(&l_i);
    let aprime = sxl.mul(&d).add_const(&Poly::one()).mul(&r_over_d).add(&sxl.mul(&sxl).mul(&d)).add(&sxl);
    Ok(TreeSubstitution { a2, aprime })
}

/// Biconnected series-parallel graphs from the network series.
pub fn biconnected_sp(order: usize) -> Result<TruncatedEGF> {
    let d = sp_networks(order)?.d;
    let xd = d.mul_x_pow(1).truncate(order);
    let one_xd = xd.add_const(&rat(1));
    let log_part = one_xd.log()?.scale(&frac(1, 2));
    let inner = xd.mul(&xd).add(&xd).add(&TruncatedEGF::x(order).scale(&rat(-2))).add_const(&rat(2));
    let frac_part = xd.mul(&inner).mul(&one_xd.inverse()?).scale(&frac(1, 4));
    Ok(log_part.sub(&frac_part))
}

/// Vertex-rooted connected series-parallel graphs, `F = x e^{B'(F)}`, with
/// the inverse `ψ_F(u) = u e^{-B'(u)}` checked on the result.
pub fn rooted_sp(order: usize) -> Result<TruncatedEGF> {
    let b1 = biconnected_sp(order + 2)?.derive();
    let b2 = b1.derive();
    let f = newton_implicit(
        |y: &TruncatedEGF, p| {
            let v = b1.compose(y)?.exp()?.mul_x_pow(1).truncate(p);
            let dv = v.mul(&b2.compose(y)?);
            Ok((v, dv))
        },
        order,
    )?;
    let psi = f.mul(&b1.compose(&f)?.neg().exp()?);
    check_identity("ψ_F(F(x)) = x", &psi, &TruncatedEGF::x(order))?;
    Ok(f)
}

/// Graphs with three rootable colours rooted at a rootable vertex:
/// `8 F e^{Σ_{S ⊆ [3]} A_S(F)}`.
pub fn rooted_crd3(order: usize) -> Result<TruncatedEGF> {
    let f = rooted_sp(order)?;
    let c = a_c_cascade(3, order)?;
    let sum = c.a[0].scale(&rat(3)).add(&c.a[1].scale(&rat(3))).add(&c.a[2]);
    Ok(f.mul(&sum.compose(&f)?.exp()?).scale(&rat(8)))
}

/// Outerplanar networks: `(1 + x - sqrt(x^2 - 6x + 1))/(4x)`.
pub fn outer_network(order: usize) -> Result<TruncatedEGF> {
    let h = TruncatedEGF::from_ints(&[1, -6, 1]).pad(order + 1);
    let root = h.sqrt()?;
    let num = TruncatedEGF::from_ints(&[1, 1]).pad(order + 1).sub(&root);
    let dt = num.div_x_pow(1)?.scale(&frac(1, 4));
    let lhs = dt.mul_x_pow(1).scale(&rat(4)).add(&root);
    check_identity("4x D~ + sqrt(1 - 6x + x^2) = 1 + x", &lhs, &TruncatedEGF::from_ints(&[1, 1]).pad(order + 1))?;
    Ok(dt)
}

/// Every named series, for front ends.
pub const SERIES_NAMES: &[&str] = &[
    "D", "S", "P", "B1", "B2", "B3", "B4", "B5", "B6", "A1", "A2", "A3", "A4", "A5", "Ahat1", "Ahat2", "Ahat3", "Ahat4",
    "Ahat5", "R", "Bbic", "F", "C3root", "Dtilde",
];

pub fn named_series(name: &str, order: usize) -> Result<TruncatedEGF> {
    let idx = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    match name {
        "D" => Ok(sp_networks(order)?.d),
        "S" => Ok(sp_networks(order)?.s),
        "P" => Ok(sp_networks(order)?.p),
        "R" => Ok(cayley(order)),
        "Bbic" => biconnected_sp(order),
        "F" => rooted_sp(order),
        "C3root" => rooted_crd3(order),
        "Dtilde" => outer_network(order),
        _ => {
            if let Some(k) = idx("Ahat") {
                let c = a_c_cascade(k, order)?;
                Ok(c.ahat[k - 1].clone())
            } else if let Some(k) = idx("A") {
                let c = a_c_cascade(k, order)?;
                Ok(c.a[k - 1].clone())
            } else if let Some(k) = idx("B") {
                b_series(k, order)
            } else {
                Err(Error::OutOfRange(format!("unknown series {name}")))
            }
        }
    }
}

/// Named bivariate series (`F2`..`F6`, `Rleaf`).
pub fn named_bivariate(name: &str, order: usize) -> Result<BivariatePoly> {
    match name {
        "Rleaf" => cayley_leaf(order),
        _ => match name.strip_prefix('F').and_then(|r| r.parse::<usize>().ok()) {
            Some(k) => fan_bivariate(k, order),
            None => Err(Error::OutOfRange(format!("unknown bivariate series {name}"))),
        },
    }
}

/// Coefficient as an exact string `p/q` (or `p`).
pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}
