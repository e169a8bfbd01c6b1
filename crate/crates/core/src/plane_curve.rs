//! Minimization of plane curves at a prime.
//!
//! Every minimizing weight `[0, w1, w2]` factors into a chain of the two basic weights
//! `[0,0,1]` (along a multiple line of the reduction) and `[0,1,1]` (at a point of
//! multiplicity above `d/2`). The search walks this tree of lattices with a budget on
//! the lattice distance and tracks `γ = d·Σw − 3e`; the chain is a minimization step as
//! soon as `γ < 0`.

use crate::error::{Error, Result};
use crate::form::{apply_weight, Form};
use crate::fp::{Fp, MPoly};
use crate::geometry::{
    binary_form_linear_factors, high_multiplicity_point, linear_factors, move_line_to, move_point_to,
};
use crate::matrix::IntMatrix;
use crate::record::{Minimized, Step, TransformRecord};
use crate::weights::minimal_complete_set;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::sync::{Mutex, OnceLock};

/// Largest degree for which the search depth is taken from the minimal complete set.
pub const DELTA_TABLE_LIMIT: u32 = 40;

pub const DEFAULT_STEP_CAP: usize = 64;

/// Order in which the search tree is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    DepthFirst,
    BreadthFirst,
    /// Expand the node with the smallest `γ` first.
    BestFirst,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dfs" => Ok(Strategy::DepthFirst),
            "bfs" => Ok(Strategy::BreadthFirst),
            "best" => Ok(Strategy::BestFirst),
            _ => Err(Error::ContractViolation(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneCurveOptions {
    pub strategy: Strategy,
    /// Maximum number of successful steps in [`minimize_plane_curve_with`].
    pub step_cap: usize,
}

impl Default for PlaneCurveOptions {
    fn default() -> Self {
        PlaneCurveOptions { strategy: Strategy::DepthFirst, step_cap: DEFAULT_STEP_CAP }
    }
}

/// Diagnostics of one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
    pub max_depth: usize,
}

/// `v_p(F(x0, p x1, p x2))`.
pub fn v011(f: &Form, p: u64) -> crate::Valuation {
    f.scale_vars_pow(&[0, 1, 1], p).valuation(p)
}

/// `v_p(F(x0, x1, p x2))`.
pub fn v001(f: &Form, p: u64) -> crate::Valuation {
    f.scale_vars_pow(&[0, 0, 1], p).valuation(p)
}

/// Maximum of `w1 + w2` over the minimal complete set for plane curves of degree `d`,
/// or `2d - 1` beyond [`DELTA_TABLE_LIMIT`].
pub fn delta_bound(d: u32) -> u32 {
    if d > DELTA_TABLE_LIMIT || d < 2 {
        return (2 * d).saturating_sub(1).max(1);
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, u32>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&d) {
        return v;
    }
    let v = match minimal_complete_set(2, d) {
        Ok(set) => set.weights.iter().map(|w| w[1] + w[2]).max().unwrap_or(1),
        Err(_) => 2 * d - 1,
    };
    cache.lock().unwrap().insert(d, v);
    v
}

#[derive(Clone)]
struct Node {
    form: Form,
    r: i64,
    gamma: i64,
    t0: IntMatrix,
    e: u64,
    depth: usize,
}

/// Children of a node in the fixed branch order: lines first (in factorization order),
/// then the point of high multiplicity.
fn children(node: &Node, p: u64, fp: Fp) -> Result<Vec<Node>> {
    let f = &node.form;
    let d = f.degree();
    let di = d as i64;
    let fbar = MPoly::from_form(f, fp);
    let (lines, g) = linear_factors(&fbar)?;
    let mut out = Vec::new();
    let w001 = [0, 0, 1];
    for l in &lines {
        let t = move_line_to(&l.coeffs, 2)?;
        let m = l.multiplicity;
        if 3 * m <= d {
            let moved = fbar.substitute_matrix(&t.reduce_mod(p));
            let x2m = MPoly::var(fp, 3, 2).pow(m);
            let rest = moved.div_exact(&x2m).expect("moved factor divides");
            let h = rest.substitute_value(2, 0).drop_var(2);
            // m ≤ d/3, so H has degree d - m > 0 and is nonzero since x2 was removed fully.
            let need = (d - 3 * m) as f64 / 2.0;
            let ok = binary_form_linear_factors(&h)?.iter().any(|k| k.multiplicity as f64 > need);
            if !ok {
                continue;
            }
        }
        let (f1, e) = apply_weight(f, &t, &w001, p)?;
        let t0 = &(&IntMatrix::weight_diagonal(&w001, p) * &t) * &node.t0;
        out.push(Node {
            form: f1,
            r: node.r - 1,
            gamma: node.gamma + di - 3 * e as i64,
            t0,
            e: node.e + e,
            depth: node.depth + 1,
        });
    }
    if let Some(pt) = high_multiplicity_point(&g, d / 2)? {
        if lines.iter().all(|l| l.eval(&fp, &pt) != 0) {
            let w011 = [0, 1, 1];
            let t = move_point_to(&pt, 0)?;
            let (f1, e) = apply_weight(f, &t, &w011, p)?;
            let t0 = &(&IntMatrix::weight_diagonal(&w011, p) * &t) * &node.t0;
            out.push(Node {
                form: f1,
                r: node.r - 2,
                gamma: node.gamma + 2 * di - 3 * e as i64,
                t0,
                e: node.e + e,
                depth: node.depth + 1,
            });
        }
    }
    Ok(out)
}

enum Visit {
    Success,
    Prune,
    Expand,
}

fn visit(node: &Node, p: u64) -> Visit {
    if node.gamma < 0 {
        return Visit::Success;
    }
    if node.t0.is_zero_mod(p) || node.r <= 0 {
        return Visit::Prune;
    }
    Visit::Expand
}

fn check_ternary(f: &Form) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::DimensionMismatch(format!("ternary form expected, got {} variables", f.nvars())));
    }
    if f.degree() < 2 {
        return Err(Error::ContractViolation("degree must be at least 2".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(())
}

struct BestEntry(i64, usize, Node);

impl PartialEq for BestEntry {
    fn eq(&self, o: &Self) -> bool {
        (self.0, self.1) == (o.0, o.1)
    }
}
impl Eq for BestEntry {}
impl PartialOrd for BestEntry {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for BestEntry {
    // Max-heap: smallest γ first, then insertion order.
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (o.0, o.1).cmp(&(self.0, self.1))
    }
}

/// One minimization step at `p` with the given search strategy.
pub fn minimize_plane_curve_one_step_with(f: &Form, p: u64, strategy: Strategy) -> Result<(Option<Step>, SearchStats)> {
    check_ternary(f)?;
    let fp = Fp::new(p)?;
    if MPoly::from_form(f, fp).is_zero() {
        return Err(Error::ContractViolation("form is not primitive at p".into()));
    }
    let root = Node {
        form: f.clone(),
        r: delta_bound(f.degree()) as i64,
        gamma: 0,
        t0: IntMatrix::identity(3),
        e: 0,
        depth: 0,
    };
    let mut stats = SearchStats::default();
    let found = match strategy {
        Strategy::DepthFirst => dfs(root, p, fp, &mut stats)?,
        Strategy::BreadthFirst => {
            let mut queue = VecDeque::from([root]);
            let mut found = None;
            while let Some(node) = queue.pop_front() {
                stats.nodes += 1;
                stats.max_depth = stats.max_depth.max(node.depth);
                match visit(&node, p) {
                    Visit::Success => {
                        found = Some(node);
                        break;
                    }
                    Visit::Prune => {}
                    Visit::Expand => queue.extend(children(&node, p, fp)?),
                }
            }
            found
        }
        Strategy::BestFirst => {
            let mut heap = BinaryHeap::new();
            let mut counter = 0usize;
            heap.push(BestEntry(root.gamma, counter, root));
            let mut found = None;
            while let Some(BestEntry(_, _, node)) = heap.pop() {
                stats.nodes += 1;
                stats.max_depth = stats.max_depth.max(node.depth);
                match visit(&node, p) {
                    Visit::Success => {
                        found = Some(node);
                        break;
                    }
                    Visit::Prune => {}
                    Visit::Expand => {
                        for c in children(&node, p, fp)? {
                            counter += 1;
                            heap.push(BestEntry(c.gamma, counter, c));
                        }
                    }
                }
            }
            found
        }
    };
    Ok((found.map(|n| Step { form: n.form, matrix: n.t0, e: n.e }), stats))
}

fn dfs(node: Node, p: u64, fp: Fp, stats: &mut SearchStats) -> Result<Option<Node>> {
    stats.nodes += 1;
    stats.max_depth = stats.max_depth.max(node.depth);
    match visit(&node, p) {
        Visit::Success => return Ok(Some(node)),
        Visit::Prune => return Ok(None),
        Visit::Expand => {}
    }
    for c in children(&node, p, fp)? {
        if let Some(n) = dfs(c, p, fp, stats)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// One minimization step at `p` (depth-first), or `None` if `F` is minimal at `p`.
pub fn minimize_plane_curve_one_step(f: &Form, p: u64) -> Result<Option<Step>> {
    Ok(minimize_plane_curve_one_step_with(f, p, Strategy::DepthFirst)?.0)
}

pub fn minimize_plane_curve(f: &Form, p: u64) -> Result<Minimized> {
    minimize_plane_curve_with(f, p, &PlaneCurveOptions::default())
}

/// Remove the `p`-part of the content, then repeat single steps until none applies.
pub fn minimize_plane_curve_with(f: &Form, p: u64, opts: &PlaneCurveOptions) -> Result<Minimized> {
    check_ternary(f)?;
    let e0 = f.valuation(p).finite().ok_or(Error::ZeroForm)?;
    let mut g = f.div_pow(p, e0);
    let mut record = TransformRecord::identity(3, p);
    record.scale_exp = e0;
    while let (Some(step), _) = minimize_plane_curve_one_step_with(&g, p, opts.strategy)? {
        if record.steps >= opts.step_cap {
            return Err(Error::NotSemistable(format!("no termination after {} steps at p = {p}", opts.step_cap)));
        }
        record.push(&step.matrix, step.e);
        g = step.form;
    }
    Ok(Minimized { form: g, record })
}
