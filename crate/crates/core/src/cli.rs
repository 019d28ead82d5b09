//! The `rcft` command line. Exit codes: 0 pass, 2 property failure, 3 usage or precondition error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bantay::{corollary6_check, fusion_sqrt_check, indicator_report};
use crate::catalog::{
    affine_data, affine_metadata, builtin_group, double_metadata, lattice_data, lattice_metadata,
    quantum_double_data, Algebra, GroupData, Metadata,
};
use crate::congruence::{
    gamma_n_sample, lemma1_relations, odd_order_criterion, sl2_group_order, sl2_order_formula,
    theorem2_test, two_ness, Sl2ModN, Variant, SL2_DEFAULT_CAP,
};
use crate::cyclo::{format_literal, Rational};
use crate::format::{parse, parse_group, serialize, Document};
use crate::galois::{check_condition6, extract_galois, lift_for};
use crate::moddata::{
    central_charge_integrality_check, commutant_basis, integral_commutant_basis, prop3c_check,
    validate, verlinde, ModularData,
};
use crate::Verdict;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rcft", version, about = "Exact checks on modular data (S, T)")]
pub struct Cli {
    /// Read modular data from this file instead of stdin.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of modular data.
    Validate,
    /// Print the nonzero Verlinde fusion coefficients.
    Fusion,
    /// Extract the Galois permutation and signs for ℓ.
    Galois {
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
    },
    /// Run the congruence test on S and T.
    Congruence,
    /// Bantay indicators, Frobenius–Schur indicators and the fusion square root.
    Bantay {
        /// Print the full Z(a,b) table as cyclotomic literals.
        #[arg(long)]
        dump: bool,
    },
    /// Basis of the matrices commuting with S and T.
    Commutant {
        #[arg(long)]
        integral: bool,
    },
    /// Conductor checks per primary and central-charge integrality.
    Prop3 {
        /// Restrict to one primary (label or index).
        #[arg(long)]
        b: Option<String>,
    },
    /// Odd-order criterion on c and h; reads metadata when flags are absent.
    Oddcrit {
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        h: Option<Vec<String>>,
    },
    /// Emit catalog data in the container format.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// SL₂(Z/N) utilities.
    Sl2 {
        #[command(subcommand)]
        action: Sl2Action,
    },
    /// Check that random products in Γ(N) act trivially.
    GammaSample {
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Rank-one lattice √n Z, n even.
    Lattice { n: u32 },
    /// Affine a1 or a2 at level k.
    Affine { algebra: String, k: u32 },
    /// Quantum double: `z N`, `s3`, `d4`, `q8` or `file PATH`.
    Double {
        group: String,
        arg: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Sl2Action {
    /// |SL₂(Z/N)| by enumeration.
    Order {
        n: u64,
        #[arg(long, default_value_t = SL2_DEFAULT_CAP)]
        cap: u64,
    },
    /// Check a presentation of SL₂(Z/N), on matrices mod N or on the input data.
    Relations {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        n: Option<u64>,
    },
}

struct Outcome {
    code: i32,
    text: String,
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        text: format!("error: {msg}\n"),
    }
}

fn verdict_code(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

struct Io<'a> {
    input: Option<PathBuf>,
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn document(&mut self) -> Result<Document, Outcome> {
        let mut text = String::new();
        match &self.input {
            Some(p) => {
                text = std::fs::read_to_string(p)
                    .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?
            }
            None => {
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            }
        }
        parse(&text).map_err(usage)
    }

    fn data(&mut self) -> Result<ModularData, Outcome> {
        Ok(self.document()?.data)
    }
}

/// Parse arguments and run; output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
        }
    };
    let mut io = Io {
        input: cli.input,
        stdin,
    };
    let outcome = match dispatch(cli.command, &mut io) {
        Ok(o) => o,
        Err(o) => o,
    };
    let sink: &mut dyn Write = if outcome.code == EXIT_USAGE { err } else { out };
    let _ = sink.write_all(outcome.text.as_bytes());
    outcome.code
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<Outcome, Outcome> {
    match cmd {
        Command::Validate => cmd_validate(&io.data()?),
        Command::Fusion => cmd_fusion(&io.data()?),
        Command::Galois { ell } => cmd_galois(&io.data()?, ell),
        Command::Congruence => cmd_congruence(&io.data()?),
        Command::Bantay { dump } => cmd_bantay(&io.data()?, dump),
        Command::Commutant { integral } => cmd_commutant(&io.data()?, integral),
        Command::Prop3 { b } => cmd_prop3(&io.data()?, b),
        Command::Oddcrit { c, h } => cmd_oddcrit(io, c, h),
        Command::Gen { family } => cmd_gen(family),
        Command::Sl2 { action } => cmd_sl2(action, io),
        Command::GammaSample { trials, seed } => {
            let md = io.data()?;
            let v = gamma_n_sample(&md, trials, seed).map_err(usage)?;
            Ok(Outcome {
                code: verdict_code(v.passed()),
                text: format!("N = {}, seed = {seed}: {v}\n", md.t_order()),
            })
        }
    }
}

fn cmd_validate(md: &ModularData) -> Result<Outcome, Outcome> {
    let r = validate(md).map_err(usage)?;
    let mut text = String::new();
    writeln!(text, "primaries: {}", md.size()).unwrap();
    writeln!(text, "field order M = {}", md.order()).unwrap();
    writeln!(text, "T order N = {}", r.t_order).unwrap();
    for a in &r.axioms {
        match a.witness {
            None => writeln!(text, "  {:<36} ok", a.name).unwrap(),
            Some((i, j)) => writeln!(text, "  {:<36} FAILED at ({i}, {j})", a.name).unwrap(),
        }
    }
    writeln!(text, "{}", if r.passed() { "pass" } else { "fail" }).unwrap();
    Ok(Outcome {
        code: verdict_code(r.passed()),
        text,
    })
}

fn cmd_fusion(md: &ModularData) -> Result<Outcome, Outcome> {
    let f = match verlinde(md) {
        Ok(f) => f,
        Err(e @ crate::moddata::DataError::NonIntegralFusion { .. }) => {
            return Ok(Outcome {
                code: EXIT_FAIL,
                text: format!("fail: {e}\n"),
            })
        }
        Err(e) => return Err(usage(e)),
    };
    let labels = md.labels();
    let mut text = String::new();
    let n = md.size();
    for a in 0..n {
        for b in a..n {
            let terms: Vec<String> = (0..n)
                .filter(|&c| f.get(a, b, c) > 0)
                .map(|c| match f.get(a, b, c) {
                    1 => labels[c].clone(),
                    k => format!("{k}·{}", labels[c]),
                })
                .collect();
            writeln!(text, "{} x {} = {}", labels[a], labels[b], terms.join(" + ")).unwrap();
        }
    }
    let ring = f.ring_axioms_hold();
    writeln!(text, "fusion ring axioms: {}", if ring { "ok" } else { "FAILED" }).unwrap();
    Ok(Outcome {
        code: verdict_code(ring),
        text,
    })
}

fn cmd_galois(md: &ModularData, ell: i64) -> Result<Outcome, Outcome> {
    let lifted = lift_for(md, ell).map_err(usage)?;
    let gs = match extract_galois(md, lifted) {
        Ok(g) => g,
        Err(e @ crate::galois::GaloisError::NotCoprime { .. }) => return Err(usage(e)),
        Err(e) => {
            return Ok(Outcome {
                code: EXIT_FAIL,
                text: format!("fail: {e}\n"),
            })
        }
    };
    let c6 = check_condition6(md, lifted).map_err(usage)?;
    let labels = md.labels();
    let mut text = String::new();
    writeln!(text, "ℓ = {ell} (acting as σ_{lifted} on Q[ξ_{}])", md.order()).unwrap();
    for a in 0..md.size() {
        let sign = if gs.signs[a] > 0 { '+' } else { '-' };
        writeln!(text, "  {} -> {sign}{}", labels[a], labels[gs.perm[a]]).unwrap();
    }
    writeln!(text, "T_σa = T_a^(ℓ²): {}", if c6 { "holds" } else { "fails" }).unwrap();
    Ok(Outcome {
        code: EXIT_PASS,
        text,
    })
}

fn cmd_congruence(md: &ModularData) -> Result<Outcome, Outcome> {
    let r = theorem2_test(md).map_err(usage)?;
    Ok(Outcome {
        code: verdict_code(r.passed()),
        text: format!("{r}\n"),
    })
}

fn cmd_bantay(md: &ModularData, dump: bool) -> Result<Outcome, Outcome> {
    let r = indicator_report(md).map_err(usage)?;
    let labels = md.labels();
    let n = md.size();
    let mut text = String::new();
    let odd = md.t_order() % 2 == 1;
    writeln!(
        text,
        "N = {} ({})",
        md.t_order(),
        if odd { "odd: T^(1/2) via 1/2 mod N" } else { "even: principal square roots" }
    )
    .unwrap();
    writeln!(text, "Frobenius–Schur indicators:").unwrap();
    for a in 0..n {
        let v = r.fs[a].as_i64().map_or_else(|| r.fs[a].to_string(), |k| k.to_string());
        writeln!(text, "  {:<16} {v}", labels[a]).unwrap();
    }
    writeln!(text, "Z(a,b) integral: {}", yes(r.all_integral())).unwrap();
    writeln!(text, "Z(a,b) ≡ N_aa^b mod 2: {}", yes(r.parity_ok)).unwrap();
    writeln!(text, "|Z(a,b)| ≤ N_aa^b: {}", yes(r.bound_ok)).unwrap();
    let mut pass = true;
    if let Some(ok) = r.closed_form_ok {
        writeln!(text, "closed form ε(0)ε(b)N: {}", yes(ok)).unwrap();
        pass &= ok && r.all_integral();
    }
    let c6 = corollary6_check(md).map_err(usage)?;
    writeln!(text, "no pseudo-real primaries: {c6}").unwrap();
    let sq = fusion_sqrt_check(md).map_err(usage)?;
    match &sq.verdict {
        Verdict::NotApplicable(_) => writeln!(text, "fusion square root: {}", sq.verdict).unwrap(),
        v => writeln!(text, "fusion square root {}: {v}", labels[sq.witness]).unwrap(),
    }
    pass &= !matches!(c6, Verdict::Fail(_)) && !matches!(sq.verdict, Verdict::Fail(_));
    if dump {
        writeln!(text, "# Z(a,b)").unwrap();
        for a in 0..n {
            for b in 0..n {
                writeln!(text, "Z {a} {b} = {}", format_literal(&r.z[a][b])).unwrap();
            }
        }
    }
    Ok(Outcome {
        code: verdict_code(pass),
        text,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_matrix(text: &mut String, m: &crate::matrix::Matrix) {
    for i in 0..m.size() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| match z.as_rational() {
                Some(q) => q.to_string(),
                None => format!("[{z}]"),
            })
            .collect();
        writeln!(text, "    {}", row.join(" ")).unwrap();
    }
}

fn cmd_commutant(md: &ModularData, integral: bool) -> Result<Outcome, Outcome> {
    let mut text = String::new();
    if integral {
        let b = integral_commutant_basis(md).map_err(usage)?;
        writeln!(text, "dimension {}", b.matrices.len()).unwrap();
        writeln!(text, "common denominator cleared: {}", b.denominator).unwrap();
        for (i, m) in b.matrices.iter().enumerate() {
            writeln!(text, "  M_{i}:").unwrap();
            print_matrix(&mut text, m);
        }
    } else {
        let b = commutant_basis(md).map_err(usage)?;
        writeln!(text, "dimension {}", b.len()).unwrap();
        for (i, m) in b.iter().enumerate() {
            writeln!(text, "  X_{i}:").unwrap();
            print_matrix(&mut text, m);
        }
    }
    Ok(Outcome {
        code: EXIT_PASS,
        text,
    })
}

fn cmd_prop3(md: &ModularData, b: Option<String>) -> Result<Outcome, Outcome> {
    let labels = md.labels();
    let which: Vec<usize> = match b {
        Some(name) => vec![md
            .label_index(&name)
            .ok_or_else(|| usage(format!("no primary `{name}`")))?],
        None => (0..md.size()).collect(),
    };
    let mut text = String::new();
    let mut pass = true;
    for b in which {
        let r = prop3c_check(md, b).map_err(usage)?;
        pass &= r.passed;
        let status = match (r.divides_24, r.coprime) {
            (true, true) => "ok",
            (true, false) => "FAILED (M/K not coprime to K)",
            (false, _) => "FAILED (M/K does not divide 24)",
        };
        writeln!(text, "  {:<16} K = {:<6} M = {:<6} {status}", labels[b], r.k, r.m).unwrap();
    }
    let cc = central_charge_integrality_check(md).map_err(usage)?;
    writeln!(text, "central charge integrality: {cc}").unwrap();
    pass &= !matches!(cc, Verdict::Fail(_));
    Ok(Outcome {
        code: verdict_code(pass),
        text,
    })
}

fn rational_arg(s: &str) -> Result<Rational, Outcome> {
    let s = s.trim();
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: num_bigint::BigInt = p.trim().parse().map_err(|_| usage(format!("bad rational `{s}`")))?;
    let q: num_bigint::BigInt = q.trim().parse().map_err(|_| usage(format!("bad rational `{s}`")))?;
    if num_traits::Zero::is_zero(&q) {
        return Err(usage(format!("bad rational `{s}`")));
    }
    Ok(Rational::new(p, q))
}

fn cmd_oddcrit(io: &mut Io, c: Option<String>, h: Option<Vec<String>>) -> Result<Outcome, Outcome> {
    let mut text = String::new();
    let (c, h, n) = match (c, h) {
        (Some(c), h) => (
            rational_arg(&c)?,
            h.unwrap_or_default()
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| rational_arg(s))
                .collect::<Result<Vec<_>, _>>()?,
            None,
        ),
        (None, Some(_)) => return Err(usage("--h needs --c")),
        (None, None) => {
            let doc = io.document()?;
            let meta = doc
                .meta
                .ok_or_else(|| usage("no --c/--h given and the input has no metadata"))?;
            (meta.c, meta.h, Some(doc.data.t_order()))
        }
    };
    let show = |r: &Rational| two_ness(r).map_or("∞".to_string(), |t| t.to_string());
    writeln!(text, "t(c) = {}", show(&c)).unwrap();
    let hs: Vec<String> = h.iter().map(show).collect();
    writeln!(text, "t(h) = [{}]", hs.join(", ")).unwrap();
    let odd = odd_order_criterion(&c, &h);
    writeln!(text, "criterion predicts odd N: {}", yes(odd)).unwrap();
    let mut pass = true;
    if let Some(n) = n {
        let agrees = odd == (n % 2 == 1);
        writeln!(text, "N = {n}: {}", if agrees { "consistent" } else { "INCONSISTENT" }).unwrap();
        pass = agrees;
    }
    Ok(Outcome {
        code: verdict_code(pass),
        text,
    })
}

fn cmd_gen(family: Family) -> Result<Outcome, Outcome> {
    let (md, meta): (ModularData, Metadata) = match family {
        Family::Lattice { n } => (lattice_data(n).map_err(usage)?, lattice_metadata(n)),
        Family::Affine { algebra, k } => {
            let alg: Algebra = algebra.parse().map_err(usage)?;
            (affine_data(alg, k).map_err(usage)?, affine_metadata(alg, k))
        }
        Family::Double { group, arg } => {
            let g = load_group(&group, arg.as_deref())?;
            (
                quantum_double_data(&g).map_err(usage)?,
                double_metadata(&g).map_err(usage)?,
            )
        }
    };
    Ok(Outcome {
        code: EXIT_PASS,
        text: serialize(&md, Some(&meta)),
    })
}

fn load_group(name: &str, arg: Option<&str>) -> Result<GroupData, Outcome> {
    match (name.to_ascii_lowercase().as_str(), arg) {
        ("z", Some(n)) => builtin_group(&format!("z{n}")).map_err(usage),
        ("file", Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {path}: {e}")))?;
            parse_group(&text).map_err(usage)
        }
        (_, None) => builtin_group(name).map_err(usage),
        (_, Some(extra)) => Err(usage(format!("unexpected argument `{extra}` after {name}"))),
    }
}

fn cmd_sl2(action: Sl2Action, io: &mut Io) -> Result<Outcome, Outcome> {
    match action {
        Sl2Action::Order { n, cap } => {
            let k = sl2_group_order(n, cap).map_err(usage)?;
            let f = sl2_order_formula(n);
            Ok(Outcome {
                code: verdict_code(k == f),
                text: format!("|SL2(Z/{n})| = {k} (formula {f})\n"),
            })
        }
        Sl2Action::Relations { variant, n } => {
            let v: Variant = variant.parse().map_err(usage)?;
            let results = match n {
                Some(n) => lemma1_relations(&Sl2ModN(n), v),
                None => lemma1_relations(&io.data()?, v),
            }
            .map_err(usage)?;
            let mut text = String::new();
            let mut pass = true;
            for r in &results {
                pass &= r.holds;
                writeln!(text, "  {:<48} {}", r.name, if r.holds { "ok" } else { "FAILED" }).unwrap();
            }
            writeln!(text, "{}", if pass { "pass" } else { "fail" }).unwrap();
            Ok(Outcome {
                code: verdict_code(pass),
                text,
            })
        }
    }
}
