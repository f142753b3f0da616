//! Python bindings: the hypergraph type plus the solve / validate / oracle
//! / gadget entry points, with rules and conditions passed as strings
//! (`tj:all:1`, `tt:1:3`, `vc`, `ds`, `is`).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use reconfig::gadgets;
use reconfig::graph::{check_condition, Condition, Configuration, Hypergraph as CoreGraph};
use reconfig::io::{graph_to_text, parse_graph_text};
use reconfig::oracle;
use reconfig::rules::{find_move, validate_sequence, Move, ReconfSequence, Rule};
use reconfig::solvers;

fn err(e: reconfig::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(verts: Vec<usize>) -> PyResult<Configuration> {
    Configuration::new(verts).map_err(err)
}

fn parse_condition(s: &str) -> PyResult<Condition> {
    Condition::parse(s).map_err(err)
}

fn parse_rule(s: &str) -> PyResult<Rule> {
    Rule::parse(s).map_err(err)
}

/// A hypergraph on vertices 0..n; plain graphs are the rank-2 case.
#[pyclass(name = "Hypergraph", frozen)]
struct PyHypergraph {
    inner: CoreGraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(n: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(Self {
            inner: CoreGraph::new(n, edges).map_err(err)?,
        })
    }

    /// Parses the text format (`graph n m` / `hypergraph n m` plus edge
    /// lines).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_graph_text(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Self {
            inner: CoreGraph::cycle(n),
        }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Self {
            inner: CoreGraph::path(n),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn distances_from(&self, src: usize) -> PyResult<Vec<Option<usize>>> {
        self.inner.distances_from(src).map_err(err)
    }

    fn diameter(&self) -> PyResult<usize> {
        self.inner.diameter().map_err(err)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn to_text(&self) -> String {
        graph_to_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(n={}, edges={})",
            self.inner.n(),
            self.inner.edge_count()
        )
    }
}

/// True when the configuration satisfies the condition on the graph.
#[pyfunction(name = "check_condition")]
fn py_check_condition(g: &PyHypergraph, condition: &str, config_verts: Vec<usize>) -> PyResult<bool> {
    let cond = parse_condition(condition)?;
    let c = config(config_verts)?;
    check_condition(&g.inner, cond, &c).map_err(err)
}

/// A single rule-legal move between the two configurations, as (from, to)
/// pairs covering every token, or None when no move exists.
#[pyfunction(name = "find_move")]
fn py_find_move(
    g: &PyHypergraph,
    c1: Vec<usize>,
    c2: Vec<usize>,
    rule: &str,
) -> PyResult<Option<Vec<(usize, usize)>>> {
    let rule = parse_rule(rule)?;
    let mv = find_move(&g.inner, &config(c1)?, &config(c2)?, &rule).map_err(err)?;
    Ok(mv.map(|m| m.pairs().to_vec()))
}

fn sequence_from_parts(
    configs: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
) -> PyResult<ReconfSequence> {
    let configurations = configs
        .into_iter()
        .map(|c| Configuration::new(c).map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    let moves = moves
        .into_iter()
        .map(|m| Move::new(m).map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(ReconfSequence {
        configurations,
        moves,
    })
}

/// Validates a whole sequence; raises ValueError naming the failing index.
#[pyfunction(name = "validate_sequence")]
fn py_validate_sequence(
    g: &PyHypergraph,
    condition: &str,
    rule: &str,
    configs: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
) -> PyResult<()> {
    let cond = parse_condition(condition)?;
    let rule = parse_rule(rule)?;
    let seq = sequence_from_parts(configs, moves)?;
    validate_sequence(&g.inner, cond, &rule, &seq).map_err(err)
}

fn sequence_dict<'py>(
    py: Python<'py>,
    rule: &Rule,
    condition: Condition,
    seq: &ReconfSequence,
) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("condition", condition.tag())?;
    out.set_item("rule", rule.to_string())?;
    out.set_item(
        "configs",
        seq.configurations
            .iter()
            .map(|c| c.vertices().to_vec())
            .collect::<Vec<_>>(),
    )?;
    out.set_item(
        "moves",
        seq.moves
            .iter()
            .map(|m| m.pairs().to_vec())
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

/// Runs the guarantee solver for the condition and returns the sequence as
/// a dict with its advertised rule.
#[pyfunction(name = "solve")]
fn py_solve<'py>(
    py: Python<'py>,
    g: &PyHypergraph,
    condition: &str,
    start: Vec<usize>,
    target: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let cond = parse_condition(condition)?;
    let s = config(start)?;
    let t = config(target)?;
    let k = s.len();
    let (seq, rule) = match cond {
        Condition::VertexCover => (
            solvers::solve_vertex_cover(&g.inner, &s, &t).map_err(err)?,
            Rule::all_slide(),
        ),
        Condition::DominatingSet => (
            solvers::solve_dominating_set(&g.inner, &s, &t).map_err(err)?,
            Rule::ds_guarantee(k),
        ),
        Condition::IndependentSet => (
            solvers::solve_independent_set(&g.inner, &s, &t).map_err(err)?,
            Rule::is_guarantee(),
        ),
        Condition::Unconstrained => (
            solvers::reconfigure_keep_intersection(&g.inner, &s, &t).map_err(err)?,
            Rule::all_slide(),
        ),
    };
    sequence_dict(py, &rule, cond, &seq)
}

/// Exact reachability by brute force; the witness is included when one
/// exists.
#[pyfunction(name = "oracle_reachability")]
fn py_oracle<'py>(
    py: Python<'py>,
    g: &PyHypergraph,
    condition: &str,
    rule: &str,
    start: Vec<usize>,
    target: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let cond = parse_condition(condition)?;
    let rule = parse_rule(rule)?;
    let r = oracle::reachability(&g.inner, cond, &rule, &config(start)?, &config(target)?)
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("reachable", r.reachable)?;
    out.set_item("shortest", r.shortest)?;
    if let Some(seq) = &r.witness {
        out.set_item("witness", sequence_dict(py, &rule, cond, seq)?)?;
    }
    Ok(out)
}

/// Connected components of the size-k solution space as (size, diameter)
/// pairs.
#[pyfunction(name = "component_report")]
fn py_component_report(
    g: &PyHypergraph,
    condition: &str,
    rule: &str,
    k: usize,
) -> PyResult<Vec<(usize, usize)>> {
    let cond = parse_condition(condition)?;
    let rule = parse_rule(rule)?;
    oracle::component_report(&g.inner, cond, &rule, k).map_err(err)
}

/// Generates a verified lower-bound gadget: kind is one of cycle-vc,
/// cycle-ds, ds-gadget, is-gadget, t-gadget.
#[pyfunction(name = "gen_gadget")]
fn py_gen_gadget<'py>(py: Python<'py>, kind: &str, param: usize) -> PyResult<Bound<'py, PyDict>> {
    let g = match kind {
        "cycle-vc" => gadgets::gen_cycle_vc(param),
        "cycle-ds" => gadgets::gen_cycle_ds(param),
        "ds-gadget" => gadgets::gen_ds_gadget(param),
        "is-gadget" => gadgets::gen_is_gadget(param),
        "t-gadget" => gadgets::gen_t_gadget(param),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown gadget kind '{other}'"
            )))
        }
    }
    .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("name", &g.name)?;
    out.set_item("graph", graph_to_text(&g.graph))?;
    out.set_item("n", g.graph.n())?;
    out.set_item("condition", g.condition.tag())?;
    out.set_item("k", g.k)?;
    out.set_item("start", g.start.vertices().to_vec())?;
    out.set_item("target", g.target.vertices().to_vec())?;
    out.set_item("claims", g.claims.len())?;
    Ok(out)
}

#[pymodule]
fn reconfig_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(py_check_condition, m)?)?;
    m.add_function(wrap_pyfunction!(py_find_move, m)?)?;
    m.add_function(wrap_pyfunction!(py_validate_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve, m)?)?;
    m.add_function(wrap_pyfunction!(py_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(py_component_report, m)?)?;
    m.add_function(wrap_pyfunction!(py_gen_gadget, m)?)?;
    Ok(())
}
