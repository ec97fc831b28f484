//! Python bindings for `ratpat`.
//!
//! Build with `cargo build -p ratpat-python --release` and copy
//! `libratpat_py.so` to `ratpat.so` somewhere on `sys.path`; see
//! `python/smoke_test.py`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ratpat::cli_io::wire::{parse_choice_table, parse_reviews, read_episodes};
use ratpat::cli_io::ReportDocument;
use ratpat::rationality_outcomes::bin_table;
use ratpat::trust_scoring::{parse_probability, to_f64};
use ratpat::{
    ChoiceEpisode, D0Zone, IfsElement, IfsList, MembershipVariant, ObjectId, PatternVector,
    ScoringConfig, ValidatedEpisode,
};

fn py_err(e: ratpat::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_ids(names: Vec<String>) -> Vec<ObjectId> {
    names.into_iter().map(ObjectId).collect()
}

fn membership_variant(smoothed: bool) -> MembershipVariant {
    if smoothed {
        MembershipVariant::Smoothed
    } else {
        MembershipVariant::MinMax
    }
}

/// A validated four-stage episode.
#[pyclass(name = "Episode", frozen)]
struct PyEpisode {
    inner: ValidatedEpisode,
}

#[pymethods]
impl PyEpisode {
    #[new]
    #[pyo3(signature = (attainable, wishlist, cart, final_set, period=1, reviewer_id="reviewer"))]
    fn new(
        attainable: Vec<String>,
        wishlist: Vec<String>,
        cart: Vec<String>,
        final_set: Vec<String>,
        period: u32,
        reviewer_id: &str,
    ) -> PyResult<Self> {
        let e = ChoiceEpisode::new(
            reviewer_id,
            period,
            to_ids(attainable),
            to_ids(wishlist),
            to_ids(cart),
            to_ids(final_set),
        );
        ratpat::validate_episode(e)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[getter]
    fn period(&self) -> u32 {
        self.inner.period()
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().iter().map(|o| o.0.clone()).collect()
    }

    fn stage_rank(&self, object: &str) -> PyResult<u8> {
        ratpat::stage_rank(&self.inner, &ObjectId::from(object)).map_err(py_err)
    }

    /// Preference matrix rows as lists of 0/1.
    fn matrix(&self) -> Vec<Vec<u32>> {
        let m = ratpat::derive_matrix(&self.inner);
        (0..m.n())
            .map(|i| m.row(i).iter().map(|&b| u32::from(b)).collect())
            .collect()
    }

    fn outdegrees(&self) -> Vec<usize> {
        ratpat::outdegrees(&ratpat::derive_matrix(&self.inner))
    }

    /// Flattened pattern vector as a 0/1 string.
    fn pattern(&self) -> String {
        ratpat::flatten(&ratpat::derive_matrix(&self.inner)).to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Episode(period={}, objects={:?})",
            self.inner.period(),
            self.objects()
        )
    }
}

fn validated(episodes: &[Bound<'_, PyEpisode>]) -> Vec<ValidatedEpisode> {
    episodes.iter().map(|e| e.get().inner.clone()).collect()
}

/// Concatenated pattern vector of several episodes over the same object count.
#[pyfunction]
fn concat_patterns(episodes: Vec<Bound<'_, PyEpisode>>) -> PyResult<String> {
    let ms: Vec<_> = validated(&episodes)
        .iter()
        .map(ratpat::derive_matrix)
        .collect();
    ratpat::concat_patterns(&ms)
        .map(|p| p.to_string())
        .map_err(py_err)
}

/// Per-slot run counts of a 0/1 pattern string with the given period sizes.
#[pyfunction]
fn scan_runs(bits: &str, period_sizes: Vec<usize>) -> PyResult<Vec<usize>> {
    let p = PatternVector::parse(bits, period_sizes).map_err(py_err)?;
    Ok(ratpat::scan_runs(&p))
}

/// `(object, pattern)` pairs such as `("M", "{3,ε}")`.
#[pyfunction]
fn omegas(episodes: Vec<Bound<'_, PyEpisode>>) -> PyResult<Vec<(String, String)>> {
    let mut eps = validated(&episodes);
    eps.sort_by_key(|e| e.period());
    Ok(ratpat::omegas(&eps)
        .map_err(py_err)?
        .into_iter()
        .map(|p| (p.object.0.clone(), p.to_string()))
        .collect())
}

/// `(pattern, rank_class, bar)` rows of the outcome set.
#[pyfunction]
fn build_tau(period_sizes: Vec<usize>) -> PyResult<Vec<(String, String, Option<String>)>> {
    Ok(ratpat::build_tau(&period_sizes)
        .map_err(py_err)?
        .into_iter()
        .map(|p| {
            (
                p.to_string(),
                p.rank_class.to_string(),
                p.bin.map(|b| b.label()),
            )
        })
        .collect())
}

/// `(bar, frequency)` rows for two periods over `n` objects.
#[pyfunction]
fn bin_frequencies(n: usize) -> PyResult<Vec<(String, u64)>> {
    Ok(ratpat::bin_frequencies(n)
        .map_err(py_err)?
        .bins
        .iter()
        .map(|(b, e)| (b.label(), e.frequency))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (bar, n, smoothed=false))]
fn membership(bar: &str, n: usize, smoothed: bool) -> PyResult<f64> {
    let bar = ratpat::Bar::from_label(bar)
        .ok_or_else(|| PyValueError::new_err(format!("unknown bar {bar:?}")))?;
    let table = bin_table(&[n, n]).map_err(py_err)?;
    ratpat::membership(bar, &table, membership_variant(smoothed))
        .map(|m| m.degree)
        .map_err(py_err)
}

/// `C(n, r) p^r (1-p)^(n-r)`; `p` is a decimal or fraction string.
#[pyfunction]
#[pyo3(signature = (n, r, p="0.5"))]
fn binomial_rationality(n: u64, r: u64, p: &str) -> PyResult<f64> {
    let p = parse_probability(p).map_err(py_err)?;
    ratpat::binomial_rationality(n, r, &p)
        .map(|x| to_f64(&x))
        .map_err(py_err)
}

#[pyfunction]
fn entropy(mu: f64, nu: f64) -> PyResult<f64> {
    let e = IfsElement::new("x", mu, nu).map_err(py_err)?;
    Ok(ratpat::entropy(&e))
}

/// Id of the element with the largest information index.
#[pyfunction]
fn choose_from_list(elements: Vec<(String, f64, f64)>) -> PyResult<String> {
    let list = IfsList::new(
        elements
            .into_iter()
            .map(|(id, mu, nu)| IfsElement::new(id, mu, nu))
            .collect::<Result<_, _>>()
            .map_err(py_err)?,
    );
    ratpat::choose_from_list(&list)
        .map(|e| e.id.clone())
        .map_err(py_err)
}

/// `(contraction_consistent, rationalizing_order)` for a choice-table JSON document.
#[pyfunction]
fn check_choice_table(document: &str) -> PyResult<(bool, Option<Vec<String>>)> {
    let table = parse_choice_table(document).map_err(py_err)?;
    let consistent = ratpat::check_contraction(&table).consistent;
    let order = ratpat::rationalizable(&table).map(|o| o.into_iter().map(|id| id.0).collect());
    Ok((consistent, order))
}

/// Full scoring pipeline on JSONL episodes and a reviews document; returns
/// the JSON report.
#[pyfunction]
#[pyo3(signature = (episodes_jsonl, reviews_json=None, smoothed=false, d0_irrational=false, p="0.5"))]
fn score(
    episodes_jsonl: &str,
    reviews_json: Option<&str>,
    smoothed: bool,
    d0_irrational: bool,
    p: &str,
) -> PyResult<String> {
    let stream = read_episodes(episodes_jsonl.as_bytes()).map_err(py_err)?;
    if let Some(e) = stream.errors.into_iter().next() {
        return Err(py_err(e));
    }
    let reviews = match reviews_json {
        Some(text) => parse_reviews(text).map_err(py_err)?,
        None => Vec::new(),
    };
    let config = ScoringConfig {
        membership: membership_variant(smoothed),
        d0_zone: if d0_irrational {
            D0Zone::Irrational
        } else {
            D0Zone::Rational
        },
        p: parse_probability(p).map_err(py_err)?,
    };
    let report = ratpat::build_report(stream.episodes, &reviews, &config);
    Ok(ReportDocument::new(&report, &config).to_json())
}

#[pymodule]
#[pyo3(name = "ratpat")]
fn ratpat_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEpisode>()?;
    m.add_function(wrap_pyfunction!(concat_patterns, m)?)?;
    m.add_function(wrap_pyfunction!(scan_runs, m)?)?;
    m.add_function(wrap_pyfunction!(omegas, m)?)?;
    m.add_function(wrap_pyfunction!(build_tau, m)?)?;
    m.add_function(wrap_pyfunction!(bin_frequencies, m)?)?;
    m.add_function(wrap_pyfunction!(membership, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_rationality, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(choose_from_list, m)?)?;
    m.add_function(wrap_pyfunction!(check_choice_table, m)?)?;
    m.add_function(wrap_pyfunction!(score, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
