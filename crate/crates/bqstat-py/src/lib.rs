//! Python bindings exposing the main types and operations: forms and
//! invariants, class enumeration, local densities, class-group 2-torsion,
//! and the 2-Selmer pipeline.

use bqstat_core::classgroup;
use bqstat_core::enumeration::{self, DiscSign, SearchConfig};
use bqstat_core::forms;
use bqstat_core::local;
use bqstat_core::reduction;
use bqstat_core::roots;
use bqstat_core::selmer;
use bqstat_core::zint::Z;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Integral binary quartic form a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct QuarticForm {
    inner: forms::QuarticForm,
}

#[pymethods]
impl QuarticForm {
    #[new]
    fn new(a: Z, b: Z, c: Z, d: Z, e: Z) -> Self {
        QuarticForm {
            inner: forms::QuarticForm::new(a, b, c, d, e),
        }
    }

    #[getter]
    fn coefficients(&self) -> (Z, Z, Z, Z, Z) {
        let [a, b, c, d, e] = self.inner.coeffs();
        (a, b, c, d, e)
    }

    /// The invariant pair (I, J).
    fn invariants(&self) -> (Z, Z) {
        let p = self.inner.invariants();
        (p.i, p.j)
    }

    /// (4 I^3 - J^2) / 27.
    fn disc(&self) -> Z {
        self.inner.disc()
    }

    /// H4 = max(4 |I|^3, J^2) = 4 H(I, J).
    fn height4(&self) -> Z {
        self.inner.invariants().height4()
    }

    fn resolvent_cubic(&self) -> CubicForm {
        CubicForm {
            inner: self.inner.resolvent_cubic(),
        }
    }

    /// "0", "1", "2+", or "2-"; raises on zero discriminant.
    fn root_type(&self) -> PyResult<String> {
        Ok(roots::root_type(&self.inner).map_err(err)?.label().to_string())
    }

    fn is_irreducible(&self) -> bool {
        roots::is_irreducible_q(&self.inner)
    }

    /// Canonical orbit representative and a witness matrix.
    fn reduce(&self) -> PyResult<(QuarticForm, ((Z, Z), (Z, Z)))> {
        let (canon, w) = reduction::reduce_quartic(&self.inner).map_err(err)?;
        Ok((
            QuarticForm { inner: canon },
            ((w.m[0][0], w.m[0][1]), (w.m[1][0], w.m[1][1])),
        ))
    }

    /// Splitting type symbol over F_p, e.g. "(1111)" or "(1^21^2)".
    fn splitting_type(&self, p: Z) -> PyResult<String> {
        Ok(local::splitting_type_quartic(&self.inner, p)
            .map_err(err)?
            .to_string())
    }

    fn is_strongly_maximal(&self, p: Z) -> bool {
        local::is_strongly_maximal_quartic(&self.inner, p)
    }

    fn qp_soluble(&self, p: Z) -> PyResult<bool> {
        selmer::qp_soluble(&self.inner, p).map_err(err)
    }

    fn locally_soluble(&self) -> PyResult<bool> {
        Ok(selmer::locally_soluble(&self.inner).map_err(err)?.soluble())
    }

    /// Equivalent form with minimized invariants.
    fn minimize(&self) -> PyResult<QuarticForm> {
        Ok(QuarticForm {
            inner: selmer::minimize(&self.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d, e] = self.inner.coeffs();
        format!("QuarticForm({a}, {b}, {c}, {d}, {e})")
    }

    fn __eq__(&self, other: &QuarticForm) -> bool {
        self.inner == other.inner
    }
}

/// Integral binary cubic form a x^3 + b x^2 y + c x y^2 + d y^3.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct CubicForm {
    inner: forms::CubicForm,
}

#[pymethods]
impl CubicForm {
    #[new]
    fn new(a: Z, b: Z, c: Z, d: Z) -> Self {
        CubicForm {
            inner: forms::CubicForm::new(a, b, c, d),
        }
    }

    #[getter]
    fn coefficients(&self) -> (Z, Z, Z, Z) {
        let [a, b, c, d] = self.inner.coeffs();
        (a, b, c, d)
    }

    /// The a-cleared invariant pair (P, Q).
    fn invariants(&self) -> (Z, Z) {
        self.inner.invariants()
    }

    fn disc(&self) -> PyResult<Z> {
        if self.inner.a == 0 {
            return Err(PyZeroDivisionError::new_err("leading coefficient is zero"));
        }
        Ok(self.inner.disc())
    }

    fn is_irreducible(&self) -> bool {
        self.inner.is_irreducible()
    }

    /// Translation-reduced representative: b lands in [0, 3a).
    fn reduce(&self) -> PyResult<CubicForm> {
        if self.inner.a <= 0 {
            return Err(PyValueError::new_err("needs a positive leading coefficient"));
        }
        Ok(CubicForm {
            inner: reduction::reduce_cubic_n(&self.inner),
        })
    }

    fn splitting_type(&self, p: Z) -> PyResult<String> {
        Ok(local::splitting_type_cubic(&self.inner, p)
            .map_err(err)?
            .to_string())
    }

    fn is_maximal(&self, p: Z) -> bool {
        local::is_maximal_cubic(&self.inner, p)
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.inner.coeffs();
        format!("CubicForm({a}, {b}, {c}, {d})")
    }

    fn __eq__(&self, other: &CubicForm) -> bool {
        self.inner == other.inner
    }
}

/// Elliptic curve y^2 = x^3 + A x + B in minimal form.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct EllipticCurve {
    inner: selmer::EllipticCurve,
}

#[pymethods]
impl EllipticCurve {
    #[new]
    fn new(a: Z, b: Z) -> PyResult<Self> {
        Ok(EllipticCurve {
            inner: selmer::EllipticCurve::new(a, b).map_err(err)?,
        })
    }

    /// (I, J) = (-3A, -27B).
    fn invariants(&self) -> (Z, Z) {
        let p = self.inner.invariants();
        (p.i, p.j)
    }

    fn height4(&self) -> Z {
        self.inner.height4_prime()
    }

    fn is_rigid(&self) -> bool {
        self.inner.is_rigid()
    }

    fn has_rational_two_torsion(&self) -> bool {
        self.inner.has_rational_two_torsion()
    }

    /// Order of the 2-Selmer group (a power of two).
    fn selmer_size(&self) -> PyResult<usize> {
        let report = selmer::selmer_size(&self.inner, &SearchConfig::default()).map_err(err)?;
        Ok(report.size())
    }

    fn __repr__(&self) -> String {
        format!("EllipticCurve({}, {})", self.inner.a, self.inner.b)
    }
}

/// Does (i, j) occur as the invariants of an integral binary quartic form?
#[pyfunction]
fn is_eligible(i: Z, j: Z) -> bool {
    forms::InvariantPair::new(i, j).is_eligible()
}

/// Eligible pairs with H < x of one discriminant sign ("+" or "-").
#[pyfunction]
fn eligible_pairs(x: Z, sign: &str) -> PyResult<Vec<(Z, Z)>> {
    let s = match sign {
        "+" => DiscSign::Positive,
        "-" => DiscSign::Negative,
        _ => return Err(PyValueError::new_err("sign must be '+' or '-'")),
    };
    Ok(enumeration::eligible_pairs_vec(x, s)
        .into_iter()
        .map(|p| (p.i, p.j))
        .collect())
}

/// The reduced monic cubic with invariants (i, j).
#[pyfunction]
fn monic_cubic_for(i: Z, j: Z) -> PyResult<CubicForm> {
    Ok(CubicForm {
        inner: enumeration::monic_cubic_for(forms::InvariantPair::new(i, j)).map_err(err)?,
    })
}

/// Complete list of GL2(Z)-classes with invariants (i, j): canonical
/// representatives with (irreducible, root_type) flags.
#[pyfunction]
fn classes_with_invariants(i: Z, j: Z) -> PyResult<Vec<(QuarticForm, bool, String)>> {
    let classes =
        enumeration::classes_with_invariants(forms::InvariantPair::new(i, j), &SearchConfig::default())
            .map_err(err)?;
    Ok(classes
        .into_iter()
        .map(|c| {
            (
                QuarticForm { inner: c.rep },
                c.irreducible,
                c.root_type.label().to_string(),
            )
        })
        .collect())
}

/// Exact p-adic density as a (numerator, denominator) pair. Families:
/// "monic-cubic" (predicates "maximal" or a splitting symbol),
/// "quartic" ("strongly-maximal" or a symbol with strong maximality),
/// "general-cubic" ("maximal").
#[pyfunction]
fn density(family: &str, p: Z, predicate: &str) -> PyResult<(Z, Z)> {
    let r = match family {
        "monic-cubic" => match predicate {
            "maximal" => local::density_maximal_monic(p, None).map_err(err)?,
            sym => {
                let sigma = local::CubicSplit::parse(sym)
                    .ok_or_else(|| PyValueError::new_err(format!("unknown symbol {sym:?}")))?;
                local::density_split_monic(p, sigma)
            }
        },
        "quartic" => match predicate {
            "strongly-maximal" => local::density_strongly_maximal_quartic(p, None).map_err(err)?,
            sym => {
                let theta = local::QuarticSplit::parse(sym)
                    .ok_or_else(|| PyValueError::new_err(format!("unknown symbol {sym:?}")))?;
                local::density_strongly_maximal_quartic(p, Some(theta)).map_err(err)?
            }
        },
        "general-cubic" => match predicate {
            "maximal" => local::density_maximal_general_cubic(p, None).map_err(err)?,
            other => {
                return Err(PyValueError::new_err(format!(
                    "general-cubic supports 'maximal', got {other:?}"
                )))
            }
        },
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    Ok((*r.numer(), *r.denom()))
}

/// (#Cl2, #Cl2+) of the maximal monogenized cubic field with invariants (i, j).
#[pyfunction]
fn cl2_counts(i: Z, j: Z) -> PyResult<(usize, usize)> {
    let c = classgroup::cl2_counts(forms::InvariantPair::new(i, j), &SearchConfig::default())
        .map_err(err)?;
    Ok((c.cl2, c.cl2_plus))
}

/// Mean 2-Selmer size over all rigid 2-torsion-free curves with H' < x:
/// returns (curve count, selmer total, mean numerator, mean denominator).
#[pyfunction]
fn selmer_average(x: Z) -> PyResult<(usize, Z, Z, Z)> {
    let stats = selmer::selmer_average(&selmer::CurveFamily::all(), x, &SearchConfig::default())
        .map_err(err)?;
    Ok((
        stats.curves,
        stats.selmer_total,
        *stats.mean.numer(),
        *stats.mean.denom(),
    ))
}

#[pymodule]
fn bqstat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<QuarticForm>()?;
    m.add_class::<CubicForm>()?;
    m.add_class::<EllipticCurve>()?;
    m.add_function(wrap_pyfunction!(is_eligible, m)?)?;
    m.add_function(wrap_pyfunction!(eligible_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(monic_cubic_for, m)?)?;
    m.add_function(wrap_pyfunction!(classes_with_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(cl2_counts, m)?)?;
    m.add_function(wrap_pyfunction!(selmer_average, m)?)?;
    Ok(())
}
