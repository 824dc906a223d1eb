//! The `gfqreg` command line. `run` returns the exit code and the report;
//! every report ends with a `VERDICT: <token>` line.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{combine, confine_pg, l_subspace, realify_rows, split};
use crate::error::{Error, Result};
use crate::field::{field_of_order, ExtSpec, FieldRef};
use crate::format::{read_matrix_file, write_matrix, MatrixFile};
use crate::geometry::{ag_matrix, bar_matrix, hat_matrix, obstruction_canonical, pg_matrix, FamilyMatrix};
use crate::limits::limits;
use crate::linalg::Mat;
use crate::matroid::{same_restriction, RepMatroid};
use crate::regularity::{decide_structure, verify_decision, Decision, Outcome};
use crate::representability::representability_profile;
use crate::suite::{run_check, SuiteOptions, CHECKS};
use crate::tangle::{induced_tangle, is_tangle, t_k_tangle, tangle_matroid_check, MinorRecipe};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gfqreg",
    version,
    about = "Finite-field matroids, GF(q)-regularity certificates and tangles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated family matrix.
    Gen {
        family: Family,
        /// Rank parameter (h for ag; must be 3 for obstruction).
        n: usize,
        q: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide HAT / BAR / BAD for a matrix over GF(q²) containing a
    /// PG(t−1, q) restriction.
    Decide {
        input: PathBuf,
        /// Labels of the geometry columns, e.g. `p1..p7` or `a,b,c`.
        #[arg(long)]
        pg: String,
    },
    /// Search for a representation over each field.
    Representable {
        input: PathBuf,
        /// Field orders; defaults to every prime power up to the field bound.
        #[arg(long, value_delimiter = ',')]
        fields: Vec<u32>,
        /// Print the representing matrices.
        #[arg(long)]
        witness: bool,
    },
    /// Subfield algebra on a matrix file.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Check whether T_k of a matroid, or the tangle it induces on a larger
    /// matroid, satisfies the tangle axioms.
    Tangle {
        input: PathBuf,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        minor: MinorArgs,
        /// Also check that κ_T is the rank function of a matroid.
        #[arg(long)]
        matroid_check: bool,
    },
    /// Roundness, vertical separations and κ(A, B).
    Connectivity {
        input: PathBuf,
        /// Look for a vertical k-separation.
        #[arg(long)]
        vertical: Option<usize>,
        /// Compute κ(A, B) and a linking minor; needs `--with`.
        #[arg(long, requires = "with")]
        kappa: Option<String>,
        #[arg(long)]
        with: Option<String>,
    },
    /// Run the built-in verification checks.
    VerifySuite {
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Run only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        /// Include running times (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
struct MinorArgs {
    /// Build T_k on M / contract \ delete and induce it onto M.
    #[arg(long)]
    contract: Option<String>,
    #[arg(long)]
    delete: Option<String>,
}

#[derive(Subcommand, Debug)]
enum AlgebraOp {
    /// Dimension of L(w) for every column of a GF(q²) matrix.
    LSubspaces { input: PathBuf },
    /// Rows Q over GF(q²) with Q(A + ωB) over GF(q), for the file's A + ωB.
    Realify {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Move a representation of PG(n−1, q) into GF(q) coordinates.
    Confine {
        input: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Pg,
    Ag,
    Hat,
    Bar,
    Obstruction,
}

/// Outcome of a command before formatting.
struct Report {
    code: i32,
    text: String,
    verdict: String,
}

impl Report {
    fn new(text: String, verdict: &str) -> Report {
        Report {
            code: EXIT_OK,
            text,
            verdict: verdict.to_string(),
        }
    }

    fn failed(text: String, verdict: &str) -> Report {
        Report {
            code: EXIT_FAILED,
            ..Report::new(text, verdict)
        }
    }
}

/// Parse `argv` (program name first) and run the command.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let verdict = if code == EXIT_OK { "OK" } else { "USAGE" };
            return (code, format!("{}VERDICT: {verdict}\n", e.render()));
        }
    };
    match dispatch(cli.command) {
        Ok(r) => {
            let mut out = r.text;
            if !out.is_empty() && !out.ends_with('\n') {
                out.push('\n');
            }
            let _ = writeln!(out, "VERDICT: {}", r.verdict);
            (r.code, out)
        }
        Err(e) => {
            let (code, verdict) = match e {
                Error::SizeBound(_) => (EXIT_SIZE, "SIZE_BOUND"),
                Error::Internal(_) => (EXIT_FAILED, "ERROR"),
                _ => (EXIT_USAGE, "USAGE"),
            };
            (code, format!("error: {e}\nVERDICT: {verdict}\n"))
        }
    }
}

fn dispatch(c: Command) -> Result<Report> {
    match c {
        Command::Gen { family, n, q, output } => gen(family, n, q, output),
        Command::Decide { input, pg } => decide(&read_matrix_file(&input)?.mat, &pg),
        Command::Representable { input, fields, witness } => {
            representable(&read_matrix_file(&input)?.mat, &fields, witness)
        }
        Command::Algebra { op } => algebra(op),
        Command::Tangle {
            input,
            order,
            minor,
            matroid_check,
        } => tangle(&read_matrix_file(&input)?.mat, order, &minor, matroid_check),
        Command::Connectivity {
            input,
            vertical,
            kappa,
            with,
        } => connectivity(&read_matrix_file(&input)?.mat, vertical, kappa.zip(with)),
        Command::VerifySuite {
            quick,
            seed,
            only,
            timings,
        } => verify_suite(SuiteOptions { quick, seed }, &only, timings),
    }
}

/// Expand `p1..p7,x,y3..y4` into labels.
pub fn parse_label_list(s: &str) -> Result<Vec<String>> {
    let bad = |w: &str| Error::Usage(format!("bad label range `{w}`"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((lo, hi)) = part.split_once("..") else {
            out.push(part.to_string());
            continue;
        };
        let split_num = |w: &str| -> Option<(String, u64)> {
            let i = w.find(|c: char| c.is_ascii_digit())?;
            let (prefix, num) = w.split_at(i);
            Some((prefix.to_string(), num.parse().ok()?))
        };
        let (pa, a) = split_num(lo).ok_or_else(|| bad(part))?;
        let (pb, b) = split_num(hi).ok_or_else(|| bad(part))?;
        let hi_prefix_ok = pb.is_empty() || pb == pa;
        if !hi_prefix_ok || b < a {
            return Err(bad(part));
        }
        out.extend((a..=b).map(|i| format!("{pa}{i}")));
    }
    Ok(out)
}

fn emit(file: &MatrixFile, output: Option<PathBuf>, summary: String) -> Result<String> {
    let text = write_matrix(file);
    match output {
        Some(path) => {
            std::fs::write(&path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(format!("{summary}\nwrote {}", path.display()))
        }
        None => Ok(text),
    }
}

fn gen(family: Family, n: usize, q: u32, output: Option<PathBuf>) -> Result<Report> {
    let fm: FamilyMatrix = match family {
        Family::Pg => pg_matrix(n, q)?,
        Family::Ag => ag_matrix(n, q)?,
        Family::Hat => hat_matrix(n, q)?,
        Family::Bar => bar_matrix(n, q)?,
        Family::Obstruction => {
            if n != 3 {
                return Err(Error::Usage("obstructions have rank 3".into()));
            }
            obstruction_canonical(q)?
        }
    };
    if let Err(why) = fm.verify() {
        return Ok(Report::failed(
            format!("generated {} failed its verifier: {why}", fm.kind),
            "FAILED",
        ));
    }
    let summary = format!(
        "{} n={} q={}: {} x {}",
        fm.kind,
        fm.n,
        fm.q,
        fm.mat.rows(),
        fm.mat.cols()
    );
    Ok(Report::new(emit(&MatrixFile::from(&fm), output, summary)?, "OK"))
}

fn show_row(row: &[u32]) -> String {
    row.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
}

fn show_mat(m: &Mat, indent: &str) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let _ = writeln!(s, "{indent}{}", show_row(m.row(i)));
    }
    s
}

fn decide(w: &Mat, pg: &str) -> Result<Report> {
    let pg = parse_label_list(pg)?;
    let d: Decision = decide_structure(w, &pg)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "columns: {} outside the geometry, {} in it; t = {}",
        d.a.cols(),
        d.g.cols(),
        w.rows()
    );
    match &d.outcome {
        Outcome::Hat(c) | Outcome::Bar(c) => {
            let _ = writeln!(s, "embedding into the {} family", c.target);
            let _ = writeln!(s, "row transform over GF(q):");
            s.push_str(&show_mat(&c.transform, "  "));
            let labels: Vec<String> =
                d.a.labels_or_default()
                    .into_iter()
                    .chain(d.g.labels_or_default())
                    .collect();
            for ((l, img), &sc) in labels.iter().zip(&c.injection).zip(&c.scalars) {
                let img = img.as_deref().unwrap_or("(loop)");
                let _ = writeln!(s, "  {l} -> {img} scaled by {sc}");
            }
        }
        Outcome::Bad { cert, minors } => {
            let _ = writeln!(
                s,
                "{} certificate Z = {{{}}}",
                if cert.strong { "strong" } else { "triple" },
                cert.labels.join(", ")
            );
            let r = &minors.recipe;
            let _ = writeln!(
                s,
                "obstruction minor: contract {{{}}}, keep {{{}}}",
                r.contract.join(", "),
                r.keep.join(", ")
            );
            let _ = writeln!(s, "  extension elements {{{}}}", r.x.join(", "));
            if let Some(r) = &minors.after_contracting_z {
                let _ = writeln!(
                    s,
                    "obstruction after contracting Z: contract {{{}}}, keep {{{}}}",
                    r.contract.join(", "),
                    r.keep.join(", ")
                );
            }
        }
    }
    if !verify_decision(w, &pg, &d) {
        return Ok(Report::failed(s + "certificate failed verification", "UNVERIFIED"));
    }
    s.push_str("certificate verified");
    Ok(Report::new(s, d.outcome.token()))
}

fn representable(m: &Mat, orders: &[u32], witness: bool) -> Result<Report> {
    let orders: Vec<u32> = if orders.is_empty() {
        (2..=limits().max_field)
            .filter(|&q| field_of_order(q).is_ok())
            .collect()
    } else {
        orders.to_vec()
    };
    let fields: Vec<FieldRef> = orders.iter().map(|&q| field_of_order(q)).collect::<Result<_>>()?;
    let m = RepMatroid::new(m.clone());
    let profile = representability_profile(&m, &fields)?;
    let mut s = String::new();
    let mut yes = Vec::new();
    for (f, w) in &profile {
        let _ = writeln!(
            s,
            "GF({}): {}",
            f.order(),
            if w.is_some() {
                "representable"
            } else {
                "not representable"
            }
        );
        if let (true, Some(w)) = (witness, w) {
            s.push_str(&show_mat(w, "  "));
        }
        if w.is_some() {
            yes.push(f.order().to_string());
        }
    }
    let verdict = if yes.is_empty() {
        "NONE".to_string()
    } else {
        yes.join(",")
    };
    Ok(Report::new(s, &verdict))
}

fn algebra(op: AlgebraOp) -> Result<Report> {
    match op {
        AlgebraOp::LSubspaces { input } => {
            let m = read_matrix_file(&input)?.mat;
            let ext = ExtSpec::from_field(m.field())?;
            let mut s = String::new();
            for (j, l) in m.labels_or_default().iter().enumerate() {
                let _ = writeln!(s, "{l}: dim L = {}", l_subspace(&m.column(j), &ext)?.dim());
            }
            Ok(Report::new(s, "OK"))
        }
        AlgebraOp::Realify { input, output } => {
            let m = read_matrix_file(&input)?.mat;
            let ext = ExtSpec::from_field(m.field())?;
            let (a, b) = split(&m, &ext)?;
            let d = m.rank();
            if d != m.rows() {
                return Err(Error::Precondition("the matrix must have full row rank".into()));
            }
            let h = 2 * d - a.vstack(&b)?.rank();
            let q = realify_rows(&a, &b, h, &ext)?;
            let prod = q.mul(&combine(&a, &b, &ext)?)?;
            if !prod.in_subfield(ext.q()) || q.rank() != h {
                return Ok(Report::failed("realified rows failed the recheck".into(), "FAILED"));
            }
            let summary = format!("h = {h}; Q(A + ωB) has entries in GF({})", ext.q());
            let text = match output {
                Some(_) => emit(&MatrixFile::new(q), output, summary)?,
                None => format!("{summary}\nQ:\n{}", show_mat(&q, "  ")),
            };
            Ok(Report::new(text, "OK"))
        }
        AlgebraOp::Confine { input, rank, q, output } => {
            let m = read_matrix_file(&input)?.mat;
            let c = confine_pg(&m, rank, q)?;
            let confined = match m.labels() {
                Some(l) => c.confined.clone().with_labels(l.to_vec())?,
                None => c.confined.clone(),
            };
            let summary = format!("confined to GF({q}) coordinates");
            Ok(Report::new(emit(&MatrixFile::new(confined), output, summary)?, "OK"))
        }
    }
}

fn tangle(m: &Mat, order: usize, minor: &MinorArgs, matroid_check: bool) -> Result<Report> {
    let m = RepMatroid::new(m.clone());
    let recipe = MinorRecipe {
        delete: minor
            .delete
            .as_deref()
            .map(parse_label_list)
            .transpose()?
            .unwrap_or_default(),
        contract: minor
            .contract
            .as_deref()
            .map(parse_label_list)
            .transpose()?
            .unwrap_or_default(),
    };
    let t = if recipe == MinorRecipe::default() {
        t_k_tangle(&m, order)?
    } else {
        let n = recipe.apply(&m)?;
        induced_tangle(&m, &recipe, &t_k_tangle(&n, order)?)?
    };
    let mut s = String::new();
    let small = t.small_sets();
    let _ = writeln!(
        s,
        "{} small sets of order {order}{}",
        small.len(),
        if t.is_induced() { " (induced)" } else { "" }
    );
    if let Some(v) = is_tangle(&t)? {
        let sets: Vec<String> = v.sets.iter().map(|x| format!("{{{}}}", x.join(", "))).collect();
        let _ = writeln!(s, "axiom {} fails at {}", v.axiom, sets.join(" "));
        return Ok(Report::new(s, "NOT_TANGLE"));
    }
    if matroid_check {
        let ok = tangle_matroid_check(&t)?;
        let _ = writeln!(s, "κ_T is {}a matroid rank function", if ok { "" } else { "not " });
        if !ok {
            return Ok(Report::failed(s, "TANGLE_MATROID_FAILED"));
        }
    }
    Ok(Report::new(s, "TANGLE"))
}

fn connectivity(m: &Mat, vertical: Option<usize>, kappa: Option<(String, String)>) -> Result<Report> {
    let m = RepMatroid::new(m.clone());
    let mut s = String::new();
    let _ = writeln!(s, "rank {}, {} elements, {} points", m.rank(), m.size(), m.epsilon());
    if let Some((a, b)) = kappa {
        let a = m.indices(&parse_label_list(&a)?)?;
        let b = m.indices(&parse_label_list(&b)?)?;
        let (z, k) = m.kappa_witness(&a, &b)?;
        let _ = writeln!(s, "κ = {k}, realized by {{{}}}", m.labels_of(&z).join(", "));
        let n = m.linking_minor(&a, &b)?;
        let na = n.indices(&m.labels_of(&a))?;
        let nb = n.indices(&m.labels_of(&b))?;
        let ok = n.size() == a.len() + b.len()
            && same_restriction(&m, &a, &n, &na)
            && same_restriction(&m, &b, &n, &nb)
            && n.lambda(&na) == k;
        let _ = writeln!(s, "linking minor on A ∪ B: {}", if ok { "verified" } else { "FAILED" });
        if !ok {
            return Ok(Report::failed(s, "UNVERIFIED"));
        }
        return Ok(Report::new(s, &format!("KAPPA={k}")));
    }
    if let Some(k) = vertical {
        return Ok(match m.vertical_connectivity(k)? {
            Some(sep) => {
                let _ = writeln!(
                    s,
                    "vertical separation {{{}}} | {{{}}} with λ = {}",
                    sep.side.join(", "),
                    sep.rest.join(", "),
                    sep.lambda
                );
                Report::new(s, "SEPARATED")
            }
            None => Report::new(s, &format!("VERTICALLY_{k}_CONNECTED")),
        });
    }
    let (round, cover) = m.is_round()?;
    if let Some((h1, h2)) = cover {
        let _ = writeln!(
            s,
            "covered by hyperplanes {{{}}} and {{{}}}",
            h1.join(", "),
            h2.join(", ")
        );
    }
    Ok(Report::new(s, if round { "ROUND" } else { "NOT_ROUND" }))
}

fn verify_suite(opts: SuiteOptions, only: &[usize], timings: bool) -> Result<Report> {
    let ids: Vec<usize> = if only.is_empty() {
        (1..=CHECKS.len()).collect()
    } else {
        only.to_vec()
    };
    if let Some(&bad) = ids.iter().find(|&&i| i == 0 || i > CHECKS.len()) {
        return Err(Error::Usage(format!("no check numbered {bad}")));
    }
    let mut s = String::new();
    let mut all = true;
    for id in ids {
        let c = run_check(id, &opts);
        all &= c.passed;
        if timings {
            let _ = writeln!(s, "{}", c.line());
        } else {
            let _ = writeln!(
                s,
                "[{}] {}. {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.detail
            );
        }
    }
    Ok(if all {
        Report::new(s, "PASS")
    } else {
        Report::failed(s, "FAIL")
    })
}
