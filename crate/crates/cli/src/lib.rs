//! The `orbit` command line: argument handling, dispatch and rendering.

pub mod parse;

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use orbitforge::census::{finite_census, orbit_count_local, orbit_count_real, CensusMode, FiniteCensusReport};
use orbitforge::descent::{descent_class, kernel_check, pencil_discriminant_check, CurvePoint, HyperCurve};
use orbitforge::lattice::{
    bqf_class_group, bqf_orbit_census, bqf_reduce, complement_lattice, verify_pair, BQForm, FracIdeal, IdealPair,
    PairVerdict,
};
use orbitforge::orbit::{
    classify_vector, construct_for_alpha, construct_representative, in_kernel_gamma, recover_alpha, same_orbit,
    stabilizer_info, stabilizer_info_standard, standard_space, OrbitComparison, OrbitWitness, StabilizerInfo,
};
use orbitforge::{EtaleAlgebra, EtaleElement, ExactRat, Matrix, OrbitRepresentative, Poly, RepTag};

pub use parse::{parse_poly, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] orbitforge::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::Parse(_) => "ParseError".into(),
            CliError::Domain(e) => {
                let s = format!("{e:?}");
                s.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
            }
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rep {
    Standard,
    Adjoint,
    Sym2,
}

impl From<Rep> for RepTag {
    fn from(r: Rep) -> Self {
        match r {
            Rep::Standard => RepTag::Standard,
            Rep::Adjoint => RepTag::Adjoint,
            Rep::Sym2 => RepTag::Sym2,
        }
    }
}

/// Rational orbits of the split odd orthogonal group SO(2n+1) on its
/// standard representation W, on skew self-adjoint operators and on
/// self-adjoint operators.
///
/// Set ORBITFORGE_SEED to fix every randomized search.
#[derive(Parser, Debug)]
#[command(name = "orbit", version)]
pub struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the operator T with characteristic polynomial f from
    /// multiplication by x on L = Q[x]/(f), optionally twisted by alpha;
    /// for the standard representation, a vector w with q(w) = d.
    Construct {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        poly: Option<String>,
        /// Twisting element: rational, polynomial in b, or use --values.
        #[arg(long)]
        alpha: Option<String>,
        /// Values of alpha at the rational roots of f (ascending).
        #[arg(long)]
        values: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<String>,
    },
    /// Recover the class alpha in L* of an operator (from a cyclic vector),
    /// or the orbit label q(w) of a vector.
    Classify {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        vector: Option<String>,
    },
    /// Decide whether alpha lies in the kernel of gamma: the twisted form
    /// <l, m>_alpha on L is split.
    Kernel {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        values: Option<String>,
        #[arg(long, value_enum, default_value = "sym2")]
        rep: Rep,
    },
    /// Compare the rational orbits of two operators given by matrices or
    /// by twisting elements: square classes in L* for self-adjoint
    /// operators, norm classes K*/N(E*) for skew ones.
    SameOrbit {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        alpha1: Option<String>,
        #[arg(long)]
        alpha2: Option<String>,
        #[arg(long)]
        matrix1: Option<String>,
        #[arg(long)]
        matrix2: Option<String>,
    },
    /// Descent class d(x0 - b) of a point on d y^2 = f(x) and its kernel test.
    Descend {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "1")]
        d: String,
    },
    /// Check that the pencil of quadrics built from alpha has discriminant
    /// proportional to the binary form v^(2n+2) f(u/v).
    PencilCheck {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        values: Option<String>,
        #[arg(long, default_value = "1")]
        d: String,
    },
    /// Orbit census of SO(2n+1)(F_p) by enumeration (n = 1; n = 2 only at p = 3).
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        rep: Rep,
        /// Worker threads; work is split by characteristic polynomial.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Number of SO(W)(Q_p)-orbits with characteristic polynomial f at a good prime p.
    LocalCount {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        rep: Rep,
    },
    /// Number of real orbits in the maximal-rank case, with the fibers of gamma.
    RealCount {
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum)]
        rep: Rep,
    },
    /// Verify a pair (I, alpha) of a fractional ideal of Z[x]/(f) and a
    /// twisting element against the integral orbit conditions, or compute
    /// the orthogonal complement of a primitive vector in the odd unimodular lattice.
    LatticeVerify {
        #[arg(long, value_enum, default_value = "sym2")]
        rep: Rep,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Ideal generators (polynomials in b) separated by ';'; default R.
        #[arg(long)]
        ideal: Option<String>,
        /// Primitive integer vector for the complement computation.
        #[arg(long)]
        vector: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Binary quadratic forms ax^2 + bxy + cy^2 of negative discriminant.
    Bqf {
        #[command(subcommand)]
        action: BqfAction,
    },
    /// Stabilizer of a regular element: the finite group scheme, the torus,
    /// or SO of the complement.
    StabInfo {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BqfAction {
    /// Reduced representative of a positive definite form.
    Reduce {
        #[arg(long)]
        form: String,
    },
    /// Reduced forms and composition table of the class group of discriminant d.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Brute-force orbit count of forms with bounded coefficients against h(d).
    Census {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 50)]
        bound: i64,
    },
}

/// Output of one command.
pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    result: Map<String, Value>,
    checks: Map<String, Value>,
    text: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Map::new(), result: Map::new(), checks: Map::new(), text: Vec::new() }
    }

    fn input(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(k.into(), v.into());
        self
    }

    fn result(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.result.insert(k.into(), v.into());
        self
    }

    fn check(&mut self, k: &str, v: bool) -> &mut Self {
        self.checks.insert(k.into(), Value::Bool(v));
        self
    }

    fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "1",
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "checks": self.checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.text.is_empty() {
            for (k, v) in &self.result {
                out.push_str(&format!("{k}: {}\n", plain(v)));
            }
        } else {
            for l in &self.text {
                out.push_str(l);
                out.push('\n');
            }
        }
        for (k, v) in &self.checks {
            out.push_str(&format!("check {k}: {}\n", if v == &Value::Bool(true) { "ok" } else { "FAILED" }));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(o) if o.contains_key("text") => plain(&o["text"]),
        Value::Array(a) => format!("[{}]", a.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn q(x: &ExactRat) -> Value {
    Value::String(x.to_string())
}

fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn poly_v(p: &Poly) -> Value {
    json!({ "text": p.to_string(), "coeffs": p.coeffs().iter().map(q).collect::<Vec<_>>() })
}

fn mat_v(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| q(&m[(i, j)])).collect())).collect())
}

fn mat_text(m: &Matrix) -> Vec<String> {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect();
    let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    cells.iter().map(|r| format!("  [{}]", r.iter().map(|s| format!("{s:>w$}")).collect::<Vec<_>>().join(" "))).collect()
}

fn elem_v(a: &EtaleElement) -> Value {
    json!({ "text": a.to_string(), "coeffs": a.coeffs().iter().map(q).collect::<Vec<_>>() })
}

fn fp_text(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let coef = if v == 1 && k > 0 { String::new() } else { v.to_string() };
        terms.push(match k {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn alpha_from(alg: &Arc<EtaleAlgebra>, alpha: &Option<String>, values: &Option<String>) -> CliResult<EtaleElement> {
    match (alpha, values) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --alpha or --values".into())),
        (None, Some(v)) => Ok(alg.from_root_values(&parse::parse_vector(v)?)?),
        (Some(a), None) => Ok(alg.elem(parse::parse_poly_in(a, b"bx")?)),
        (None, None) => Ok(alg.one()),
    }
}

fn operator_algebra(f: &Poly) -> CliResult<Arc<EtaleAlgebra>> {
    Ok(EtaleAlgebra::new(f.clone())?)
}

fn rep_check(rep: Rep) -> CliResult<RepTag> {
    if rep == Rep::Standard {
        return Err(CliError::Usage("this command needs --rep adjoint or --rep sym2".into()));
    }
    Ok(rep.into())
}

fn symmetry_ok(r: &OrbitRepresentative) -> bool {
    let g = r.space.gram();
    let lhs = g * &r.t;
    let rhs = &r.t.transpose() * g;
    match r.rep {
        RepTag::Sym2 => lhs == rhs,
        RepTag::Adjoint => lhs == rhs.scale(&-ExactRat::from_integer(1.into())),
        RepTag::Standard => true,
    }
}

fn construct(rep: Rep, poly: &Option<String>, alpha: &Option<String>, values: &Option<String>, n: Option<usize>, d: &Option<String>) -> CliResult<Report> {
    let mut r = Report::new("construct");
    r.input("rep", RepTag::from(rep).to_string());
    if rep == Rep::Standard {
        let n = n.ok_or_else(|| CliError::Usage("missing --n".into()))?;
        let d = parse::parse_rational(need(d, "d")?)?;
        let space = standard_space(n)?;
        let w = space.vector_with_value(&d);
        r.input("n", n).input("d", q(&d));
        r.result("vector", Value::Array(w.iter().map(q).collect()));
        r.result("q2", q(&space.q2(&w)));
        r.check("q2_matches", space.q2(&w) == d);
        r.line(format!("w = [{}]", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
        r.line(format!("q2(w) = {}", space.q2(&w)));
        return Ok(r);
    }
    let f = parse_poly(need(poly, "poly")?)?;
    r.input("poly", f.to_string());
    let tag = RepTag::from(rep);
    let rep_op = if alpha.is_none() && values.is_none() {
        construct_representative(&f, tag)?
    } else {
        let alg = operator_algebra(&f)?;
        let a = alpha_from(&alg, alpha, values)?;
        r.input("alpha", a.to_string());
        construct_for_alpha(&f, &a, tag)?
    };
    r.result("matrix", mat_v(&rep_op.t));
    r.result("charpoly", poly_v(&rep_op.charpoly));
    r.check("charpoly_matches", rep_op.t.charpoly()? == f);
    r.check(if tag == RepTag::Sym2 { "self_adjoint" } else { "skew_adjoint" }, symmetry_ok(&rep_op));
    r.line(format!("T ({tag}) with charpoly {}:", rep_op.charpoly));
    r.text.extend(mat_text(&rep_op.t));
    Ok(r)
}

fn classify(rep: Rep, matrix: &Option<String>, vector: &Option<String>) -> CliResult<Report> {
    let mut r = Report::new("classify");
    r.input("rep", RepTag::from(rep).to_string());
    if rep == Rep::Standard {
        let w = parse::parse_vector(need(vector, "vector")?)?;
        if w.len() % 2 == 0 {
            return Err(CliError::Usage("vector must have odd length 2n+1".into()));
        }
        let space = standard_space(w.len() / 2)?;
        let label = classify_vector(&w, &space);
        r.input("vector", Value::Array(w.iter().map(q).collect()));
        r.result("label", label.to_string());
        r.result("q2", q(&space.q2(&w)));
        return Ok(r);
    }
    let t = parse::parse_matrix(need(matrix, "matrix")?)?;
    let op = OrbitRepresentative::new(t.clone(), rep.into())?;
    let alpha = recover_alpha(&op)?;
    r.input("matrix", mat_v(&t));
    r.result("charpoly", poly_v(&op.charpoly));
    r.result("alpha", elem_v(&alpha));
    r.result("alpha_norm", q(&alpha.norm()));
    let kernel = in_kernel_gamma(&op.charpoly, &alpha, op.rep)?;
    r.check("in_kernel", kernel);
    Ok(r)
}

fn kernel(poly: &str, alpha: &Option<String>, values: &Option<String>, rep: Rep) -> CliResult<Report> {
    let mut r = Report::new("kernel");
    let f = parse_poly(poly)?;
    let alg = operator_algebra(&f)?;
    let a = alpha_from(&alg, alpha, values)?;
    let tag = rep_check(rep)?;
    r.input("poly", f.to_string()).input("alpha", a.to_string()).input("rep", tag.to_string());
    r.result("in_kernel", in_kernel_gamma(&f, &a, tag)?);
    Ok(r)
}

fn same(rep: Rep, poly: &Option<String>, a1: &Option<String>, a2: &Option<String>, m1: &Option<String>, m2: &Option<String>) -> CliResult<Report> {
    let mut r = Report::new("same-orbit");
    let tag = rep_check(rep)?;
    r.input("rep", tag.to_string());
    let (x, y) = match (m1, m2) {
        (Some(m1), Some(m2)) => {
            let (t1, t2) = (parse::parse_matrix(m1)?, parse::parse_matrix(m2)?);
            r.input("matrix1", mat_v(&t1)).input("matrix2", mat_v(&t2));
            (OrbitRepresentative::new(t1, tag)?, OrbitRepresentative::new(t2, tag)?)
        }
        (None, None) => {
            let f = parse_poly(need(poly, "poly")?)?;
            let alg = operator_algebra(&f)?;
            let x = alpha_from(&alg, a1, &None)?;
            let y = alpha_from(&alg, a2, &None)?;
            r.input("poly", f.to_string()).input("alpha1", x.to_string()).input("alpha2", y.to_string());
            (construct_for_alpha(&f, &x, tag)?, construct_for_alpha(&f, &y, tag)?)
        }
        _ => return Err(CliError::Usage("give both --matrix1 and --matrix2".into())),
    };
    match same_orbit(&x, &y)? {
        OrbitComparison::Equal(w) => {
            r.result("verdict", "equal");
            let wit = match w {
                OrbitWitness::SquareRoot(s) => json!({ "square_root": elem_v(&s) }),
                OrbitWitness::Norm(s) => json!({ "norm": elem_v(&s) }),
                OrbitWitness::Label(l) => json!({ "label": l.to_string() }),
            };
            r.result("witness", wit);
        }
        OrbitComparison::Distinct(reason) => {
            r.result("verdict", "distinct");
            r.result("reason", reason.to_string());
        }
        OrbitComparison::Unknown => {
            r.result("verdict", "unknown");
        }
    }
    Ok(r)
}

fn descend(poly: &str, x: &str, y: &str, d: &str) -> CliResult<Report> {
    let mut r = Report::new("descend");
    let f = parse_poly(poly)?;
    let d = parse::parse_rational(d)?;
    let (x, y) = (parse::parse_rational(x)?, parse::parse_rational(y)?);
    r.input("poly", f.to_string()).input("d", q(&d)).input("x", q(&x)).input("y", q(&y));
    let c = HyperCurve::new(f, d)?;
    let pt = CurvePoint::affine(x, y);
    let a = descent_class(&c, &pt)?;
    r.result("alpha", elem_v(&a));
    r.result("norm", q(&a.norm()));
    r.result("genus", c.genus());
    r.check("on_curve", c.contains(&pt));
    r.check("in_kernel", kernel_check(&c, &pt)?);
    Ok(r)
}

fn pencil(poly: &str, alpha: &Option<String>, values: &Option<String>, d: &str) -> CliResult<Report> {
    let mut r = Report::new("pencil-check");
    let f = parse_poly(poly)?;
    let alg = operator_algebra(&f)?;
    let a = alpha_from(&alg, alpha, values)?;
    let d = parse::parse_rational(d)?;
    r.input("poly", f.to_string()).input("alpha", a.to_string()).input("d", q(&d));
    let chk = pencil_discriminant_check(&f, &a, &d)?;
    r.result("constant", q(&chk.constant));
    r.result("constant_class", big(&chk.constant_class));
    r.result("determinant", poly_v(&chk.determinant));
    r.check("proportional", chk.pass);
    Ok(r)
}

fn census_report(rep: &FiniteCensusReport, jobs: usize) -> Report {
    let mut r = Report::new("census");
    r.input("p", rep.p).input("n", rep.n).input("rep", rep.rep.to_string()).input("jobs", jobs);
    r.result("mode", match rep.mode {
        CensusMode::Full => "full",
        CensusMode::SingleOrbit => "single-orbit",
    });
    r.result("group_order", rep.group_order);
    r.result("group_order_computed", rep.group_order_computed);
    r.result("total_elements", rep.total_elements);
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|row| {
            json!({
                "invariant": row.invariant,
                "text": if rep.rep == RepTag::Standard { format!("q2 = {}", row.invariant[0]) } else { fp_text(&row.invariant) },
                "separable": row.separable,
                "factor_count": row.factor_count,
                "operator_count": row.operator_count,
                "orbit_sizes": row.orbit_sizes,
                "stabilizer_orders": row.stabilizer_orders,
            })
        })
        .collect();
    r.result("rows", Value::Array(rows));
    r.check("group_order", rep.group_order == rep.group_order_computed);
    r.check(
        "orbit_stabilizer",
        rep.rows.iter().all(|row| row.orbit_sizes.iter().zip(&row.stabilizer_orders).all(|(a, b)| a * b == rep.group_order)),
    );
    r.line(format!(
        "SO({})(F_{}) of order {} acting on {} ({} elements, {} mode)",
        2 * rep.n + 1,
        rep.p,
        rep.group_order,
        rep.rep,
        rep.total_elements,
        if rep.mode == CensusMode::Full { "full" } else { "single-orbit" }
    ));
    r.line(format!("{:<28} {:>4} {:>8} {:>7}  orbit sizes", "invariant", "sep", "factors", "count"));
    for row in &rep.rows {
        let inv = if rep.rep == RepTag::Standard { format!("q2 = {}", row.invariant[0]) } else { fp_text(&row.invariant) };
        r.line(format!(
            "{:<28} {:>4} {:>8} {:>7}  {:?}",
            inv,
            if row.separable { "yes" } else { "no" },
            row.factor_count.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
            row.operator_count.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
            row.orbit_sizes
        ));
    }
    r
}

fn lattice_verify(rep: Rep, poly: &Option<String>, alpha: &str, ideal: &Option<String>, vector: &Option<String>, n: usize) -> CliResult<Report> {
    let mut r = Report::new("lattice-verify");
    if let Some(v) = vector {
        let w = parse::parse_vector(v)?;
        if w.iter().any(|x| !x.is_integer()) {
            return Err(CliError::Usage("vector must be integral".into()));
        }
        let w: Vec<BigInt> = w.iter().map(|x| x.to_integer()).collect();
        r.input("vector", Value::Array(w.iter().map(big).collect())).input("n", n);
        let c = complement_lattice(&w, n)?;
        r.result("q2", big(&c.q2));
        r.result("gram", mat_v(c.lattice.gram()));
        r.result("basis", Value::Array(c.basis.iter().map(|col| Value::Array(col.iter().map(big).collect())).collect()));
        r.result("even", c.even);
        r.result("det", big(&c.lattice.det()));
        return Ok(r);
    }
    let tag = rep_check(rep)?;
    let f = parse_poly(need(poly, "poly")?)?;
    let alg = operator_algebra(&f)?;
    let a = alg.elem(parse::parse_poly_in(alpha, b"bx")?);
    let i = match ideal {
        None => FracIdeal::unit(&alg)?,
        Some(text) => {
            let gens = text
                .split(';')
                .map(|g| parse::parse_poly_in(g, b"bx").map(|p| alg.elem(p)))
                .collect::<Result<Vec<_>, _>>()?;
            FracIdeal::generated(&alg, &gens)?
        }
    };
    r.input("poly", f.to_string()).input("rep", tag.to_string()).input("alpha", a.to_string()).input("ideal", i.to_string());
    match verify_pair(&IdealPair::new(i, a, tag)?)? {
        PairVerdict::Valid { gram, beta_operator } => {
            r.result("verdict", "valid");
            r.result("gram", mat_v(&gram));
            r.result("operator", mat_v(&beta_operator));
        }
        PairVerdict::Invalid { reason, gram } => {
            r.result("verdict", "invalid");
            r.result("reason", reason.to_string());
            if let Some(g) = gram {
                r.result("gram", mat_v(&g));
            }
        }
    }
    Ok(r)
}

fn form_v(f: &BQForm) -> Value {
    json!([big(&f.a), big(&f.b), big(&f.c)])
}

fn bqf(action: &BqfAction) -> CliResult<Report> {
    match action {
        BqfAction::Reduce { form } => {
            let [a, b, c] = parse::parse_int_triple(form)?;
            let f = BQForm { a, b, c };
            let mut r = Report::new("bqf reduce");
            r.input("form", form_v(&f));
            let red = bqf_reduce(&f)?;
            r.result("reduced", form_v(&red)).result("disc", big(&red.disc()));
            r.check("reduced", red.is_reduced());
            r.line(format!("{f} -> {red}"));
            Ok(r)
        }
        BqfAction::Classgroup { d } => {
            let g = bqf_class_group(&BigInt::from(*d))?;
            let mut r = Report::new("bqf classgroup");
            r.input("d", *d);
            r.result("h", g.order());
            r.result("forms", Value::Array(g.forms.iter().map(form_v).collect()));
            r.result("table", json!(g.table));
            r.result("identity", g.identity);
            r.check("group_axioms", true);
            r.line(format!("h({d}) = {}", g.order()));
            for (i, f) in g.forms.iter().enumerate() {
                r.line(format!("  [{i}] {f}  order {}", g.element_order(i)));
            }
            Ok(r)
        }
        BqfAction::Census { d, bound } => {
            let c = bqf_orbit_census(*d, *bound)?;
            let mut r = Report::new("bqf census");
            r.input("d", *d).input("bound", *bound);
            r.result("forms_considered", c.forms_considered);
            r.result("orbits", c.twisted_orbits);
            r.result("untwisted_orbits", c.untwisted_orbits);
            r.result("class_number", c.class_number);
            r.result("truncated_components", c.truncated_components);
            r.result(
                "discrepancies",
                Value::Array(c.discrepancies.iter().map(|(a, b)| json!([form_v(a), form_v(b)])).collect()),
            );
            r.check("matches_class_number", c.agrees());
            Ok(r)
        }
    }
}

fn stab(rep: Rep, poly: &Option<String>, n: Option<usize>, d: &Option<String>) -> CliResult<Report> {
    let mut r = Report::new("stab-info");
    r.input("rep", RepTag::from(rep).to_string());
    let info = if rep == Rep::Standard {
        let n = n.ok_or_else(|| CliError::Usage("missing --n".into()))?;
        let d = parse::parse_rational(need(d, "d")?)?;
        r.input("n", n).input("d", q(&d));
        stabilizer_info_standard(n, &d)?
    } else {
        let f = parse_poly(need(poly, "poly")?)?;
        r.input("poly", f.to_string());
        stabilizer_info(&f, rep.into())?
    };
    match info {
        StabilizerInfo::Standard { dim_u, disc_class } => {
            r.result("group", format!("SO(U), dim U = {dim_u}"));
            r.result("disc_class", big(&disc_class));
        }
        StabilizerInfo::Adjoint { g, k_modulus, e_modulus, dimension } => {
            r.result("group", "Res_{K/Q} U_1(E/K)");
            r.result("g", poly_v(&g)).result("k_modulus", poly_v(&k_modulus)).result("e_modulus", poly_v(&e_modulus));
            r.result("dimension", dimension);
        }
        StabilizerInfo::Sym2 { l_modulus, order } => {
            r.result("group", "(Res_{L/Q} mu_2)_{N=1}");
            r.result("l_modulus", poly_v(&l_modulus));
            r.result("order", big(&order));
        }
    }
    Ok(r)
}

pub fn execute(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Construct { rep, poly, alpha, values, n, d } => construct(*rep, poly, alpha, values, *n, d),
        Command::Classify { rep, matrix, vector } => classify(*rep, matrix, vector),
        Command::Kernel { poly, alpha, values, rep } => kernel(poly, alpha, values, *rep),
        Command::SameOrbit { rep, poly, alpha1, alpha2, matrix1, matrix2 } => same(*rep, poly, alpha1, alpha2, matrix1, matrix2),
        Command::Descend { poly, x, y, d } => descend(poly, x, y, d),
        Command::PencilCheck { poly, alpha, values, d } => pencil(poly, alpha, values, d),
        Command::Census { p, n, rep, jobs } => Ok(census_report(&finite_census(*p, *n, (*rep).into(), *jobs)?, *jobs)),
        Command::LocalCount { poly, p, rep } => {
            let f = parse_poly(poly)?;
            let tag = rep_check(*rep)?;
            let mut r = Report::new("local-count");
            r.input("poly", f.to_string()).input("p", *p).input("rep", tag.to_string());
            r.result("count", big(&orbit_count_local(&f, *p, tag)?));
            Ok(r)
        }
        Command::RealCount { poly, rep } => {
            let f = parse_poly(poly)?;
            let tag = rep_check(*rep)?;
            let mut r = Report::new("real-count");
            r.input("poly", f.to_string()).input("rep", tag.to_string());
            let rc = orbit_count_real(&f, tag)?;
            r.result("count", big(&rc.kernel_count));
            r.result("fibers", Value::Array(rc.fibers.iter().map(|(k, s)| json!({ "k": k, "size": big(s) })).collect()));
            Ok(r)
        }
        Command::LatticeVerify { rep, poly, alpha, ideal, vector, n } => lattice_verify(*rep, poly, alpha, ideal, vector, *n),
        Command::Bqf { action } => bqf(action),
        Command::StabInfo { rep, poly, n, d } => stab(*rep, poly, *n, d),
    }
}

/// Run with full argv (including the program name); returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"))
            } else {
                write!(out, "{}", report.to_text())
            };
            0
        }
        Err(e) => {
            if cli.json {
                let v = json!({ "schema": "1", "error": { "kind": e.kind(), "message": e.to_string() } });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
