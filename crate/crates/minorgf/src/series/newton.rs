use super::{Coeff, Series};
use crate::{Error, Result};

/// Solve `y = Φ(y)` for a power series `y` with `y(0) = 0`.
///
/// `phi(y, p)` must return `Φ(y)` and `∂Φ/∂y` at `y`, both known through
/// `x^p`. Each step doubles the number of correct coefficients; a step that
/// fails to kill the residual means the functional is not contractive.
pub fn newton_implicit<C, F>(phi: F, order: usize) -> Result<Series<C>>
where
    C: Coeff,
    F: Fn(&Series<C>, usize) -> Result<(Series<C>, Series<C>)>,
{
    let (v0, _) = phi(&Series::zero(0), 0)?;
    if !v0.coeff(0).is_zero() {
        return Err(Error::Series("Φ(0) must have zero constant term".into()));
    }
    let mut y = Series::<C>::zero(0);
    let mut p = 0;
    while p < order {
        p = (2 * p + 1).min(order);
        let yp = y.pad(p);
        let (v, dv) = phi(&yp, p)?;
        check_order(&v, &dv, p)?;
        let denom = Series::one(p).sub(&dv.truncate(p));
        let inv = denom
            .inverse()
            .map_err(|_| Error::Series("non-contractive functional: 1 - ∂Φ/∂y is not invertible".into()))?;
        let y_next = yp.add(&v.truncate(p).sub(&yp).mul(&inv));
        let (check, _) = phi(&y_next, p)?;
        if !check.truncate(p).sub(&y_next).is_zero() {
            return Err(Error::Series(format!(
                "non-contractive functional: residual survives a Newton step at order {p}"
            )));
        }
        y = y_next;
    }
    Ok(y.pad(order))
}

fn check_order<C: Coeff>(v: &Series<C>, dv: &Series<C>, p: usize) -> Result<()> {
    if v.order() < p || dv.order() < p {
        return Err(Error::Series(format!("functional returned a series below the requested order {p}")));
    }
    Ok(())
}
