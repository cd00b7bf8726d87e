mod report;

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use holonomy_core::builtins::{describe, names};
use holonomy_core::decomp::report as decomp_report;
use holonomy_core::document::InputDocument;
use holonomy_core::graphic::{
    cone_edge, family_g_i, graphic_lcs_series, is_chordal, kappa, nonhypersolvable_cert, Graph,
};
use holonomy_core::holonomy::{prime_factors, DEFAULT_GUARD, DEFAULT_MAX_DEGREE};
use holonomy_core::oracle::{holonomy_dims_from_hilbert, quadratic_algebra_dims};
use holonomy_core::series::{
    chen_lower_bound, chen_ranks_decomposable, chen_ranks_direct, hypersolvable_consistency, lcs_product_check,
    lcs_ranks_decomposable, PowerSeries,
};
use holonomy_core::{Arrangement, Error, Holonomy, Options};

use report::{list, Report};

const GUARD_VAR: &str = "HOLONOMY_GUARD";

#[derive(Parser)]
#[command(name = "holonomy", version, about = "Holonomy Lie algebras of hyperplane arrangements")]
struct Cli {
    /// Print the line-oriented machine format instead of the human report.
    #[arg(long, global = true)]
    machine: bool,
    /// Exit with status 1 when the verdict fails.
    #[arg(long, global = true)]
    assert: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input document path, `-` for stdin, or `builtin:NAME`.
    input: String,
}

#[derive(Args)]
struct Degree {
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Rank-2 flats, their multiplicities, b1 and b2.
    Flats {
        #[command(flatten)]
        input: Input,
        /// Print the flats-variant input document instead of a report.
        #[arg(long)]
        emit_doc: bool,
    },
    /// Holonomy ranks, torsion and the lower bound per degree.
    Ranks {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
        /// `q`, `all`, or a prime.
        #[arg(long, default_value = "all")]
        field: String,
    },
    /// Degree-3 decomposability over every field.
    Decomposable {
        #[command(flatten)]
        input: Input,
    },
    /// Lower central series ranks and the product identity.
    Lcs {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
    },
    /// Chen ranks by formula and, with --direct, from the holonomy algebra.
    Chen {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
        #[arg(long)]
        direct: bool,
    },
    /// Graph operations.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Holonomy ranks against the enveloping-algebra oracle.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Checks the hypersolvable Poincaré identity for given exponents.
    HsCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
        #[command(flatten)]
        degree: Degree,
    },
    /// Lists the builtin arrangements.
    Examples,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Clique counts κ_s.
    Kappa(Input),
    /// Whether the graph has no K4.
    K4Free(Input),
    /// Whether the graph is chordal.
    Chordal(Input),
    /// Cones an edge; prints the new graph document.
    Cone {
        #[command(flatten)]
        input: Input,
        /// 1-based endpoints `a,b`.
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        edge: Vec<usize>,
    },
    /// Prints the graph document of the cone family member G^i.
    Family {
        #[arg(long)]
        i: usize,
    },
    /// `(1 - t)^{κ1 - 2κ2} (1 - 2t)^{κ2}` for a K4-free graph.
    GraphicLcs {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
    },
}

enum Output {
    Report(Report),
    Text(String),
}

fn guard() -> Result<u128, Error> {
    match std::env::var(GUARD_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{GUARD_VAR} must be a non-negative integer"))),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

fn options(max_degree: usize) -> Result<Options, Error> {
    if max_degree == 0 {
        return Err(Error::InvalidInput("--max-degree must be at least 1".into()));
    }
    Ok(Options {
        max_degree,
        guard: guard()?,
        ..Options::default()
    })
}

fn load(source: &str) -> Result<InputDocument, Error> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Ok(InputDocument::builtin(name));
    }
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| Error::InvalidInput(format!("reading {source}: {e}")))?
    };
    InputDocument::parse(&text)
}

fn arrangement(input: &Input) -> Result<Arrangement, Error> {
    load(&input.input)?.to_arrangement()
}

fn graph(input: &Input) -> Result<(Graph, Option<String>), Error> {
    let doc = load(&input.input)?;
    let label = doc.label.clone().or_else(|| doc.builtin.clone());
    match doc.to_graph()? {
        Some(g) => Ok((g, label)),
        None => Err(Error::InvalidInput("input is not a graph".into())),
    }
}

fn header(r: &mut Report, a: &Arrangement) {
    let label = a.label.clone().unwrap_or_else(|| "-".into());
    r.field("label", &label);
    r.field("b1", a.b1());
    r.line(format!("arrangement: {label}, {} hyperplanes", a.b1()));
}

fn series_text(s: &PowerSeries) -> String {
    list(s.coeffs())
}

fn flats(input: &Input, emit_doc: bool) -> Result<Output, Error> {
    let a = arrangement(input)?;
    if emit_doc {
        return Ok(Output::Text(format!("{}\n", InputDocument::from_arrangement(&a).to_json())));
    }
    let mut r = Report::new("flats");
    header(&mut r, &a);
    r.field("b2", a.b2());
    r.field("flats", a.flats.len());
    r.field("multi_flats", a.multi_flats().len());
    r.line(format!("b2 = {}, {} rank-2 flats, {} with mu >= 2", a.b2(), a.flats.len(), a.multi_flats().len()));
    for (k, f) in a.flats.iter().enumerate() {
        r.field(format!("flat.{k}"), list(&f.members));
        r.field(format!("mu.{k}"), f.mu);
        r.line(format!("  {{{}}}  mu = {}", list(&f.members), f.mu));
    }
    Ok(Output::Report(r))
}

enum FieldChoice {
    Rational,
    All,
    Prime(u64),
}

fn parse_field(s: &str) -> Result<FieldChoice, Error> {
    match s {
        "q" | "Q" => Ok(FieldChoice::Rational),
        "all" => Ok(FieldChoice::All),
        _ => {
            let p: u64 = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("--field must be q, all or a prime, got '{s}'")))?;
            if p < 2 || prime_factors(p) != [p] {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            Ok(FieldChoice::Prime(p))
        }
    }
}

fn ranks(input: &Input, degree: &Degree, field: &str) -> Result<Output, Error> {
    let field = parse_field(field)?;
    let a = arrangement(input)?;
    let h = Holonomy::compute(&a, &options(degree.max_degree)?)?;
    let mut r = Report::new("ranks");
    header(&mut r, &a);
    r.field("max_degree", h.max_degree());
    let field_name = match field {
        FieldChoice::Rational => "q".to_string(),
        FieldChoice::All => "all".to_string(),
        FieldChoice::Prime(p) => p.to_string(),
    };
    r.field("field", &field_name);
    r.line(format!("{:>6} {:>8} {:>8}  torsion", "degree", "rank_q", "bound"));
    let mut ok = true;
    for d in 1..=h.max_degree() {
        let rank = h.rank_q(d)?;
        let bound = h.falk_bound(d);
        let torsion = h.torsion(d)?;
        let inv = h.invariant_factors(d)?;
        // The lower bound and the presentation matrix start in degree 2.
        let (bound_text, ones) = if d >= 2 {
            (bound.to_string(), inv.ones.to_string())
        } else {
            ("-".to_string(), "-".to_string())
        };
        r.field(format!("rank_q.{d}"), rank);
        r.field(format!("bound.{d}"), &bound_text);
        r.field(format!("torsion.{d}"), list(&torsion));
        r.field(format!("unit_factors.{d}"), ones);
        r.line(format!("{d:>6} {rank:>8} {bound_text:>8}  {}", list(&torsion)));
        let holds = match field {
            FieldChoice::Rational => rank as u128 == bound,
            FieldChoice::Prime(p) => {
                let dp = h.fp_dim(d, p)?;
                r.field(format!("fp_dim.{d}"), dp);
                r.line(format!("{:>6} dim over F_{p}: {dp}", ""));
                dp as u128 == bound
            }
            FieldChoice::All => {
                let bad = h.bad_primes(d)?;
                let dims: Vec<String> = bad
                    .iter()
                    .map(|&p| h.fp_dim(d, p).map(|x| format!("{p}:{x}")))
                    .collect::<Result<_, _>>()?;
                r.field(format!("bad_primes.{d}"), list(&dims));
                if !dims.is_empty() {
                    r.line(format!("{:>6} jumps at prime:dim {}", "", list(&dims)));
                }
                rank as u128 == bound && bad.is_empty()
            }
        };
        if d >= 2 {
            ok &= holds;
        }
    }
    r.line(format!("rank equals bound in degrees 2..{} over {field_name}: {ok}", h.max_degree()));
    r.verdict(ok);
    Ok(Output::Report(r))
}

fn decomposable(input: &Input) -> Result<Output, Error> {
    let a = arrangement(input)?;
    let h = Holonomy::compute(&a, &options(3)?)?;
    let rep = decomp_report(&h, 3)?;
    let mut r = Report::new("decomposable");
    header(&mut r, &a);
    r.field("degree", rep.degree);
    r.field("rank_q", rep.rank_q);
    r.field("falk_bound", rep.falk_bound);
    r.field("bad_primes", list(rep.bad_primes.iter().map(|(p, d)| format!("{p}:{d}"))));
    r.field("rational", rep.rational);
    r.field("overall", rep.overall);
    r.line(format!("degree 3: rank over Q {} vs lower bound {}", rep.rank_q, rep.falk_bound));
    if rep.bad_primes.is_empty() {
        r.line("no bad primes");
    } else {
        for (p, d) in &rep.bad_primes {
            r.line(format!("dimension over F_{p}: {d}"));
        }
    }
    r.line(format!("decomposable: {}", rep.overall));
    r.verdict(rep.overall);
    Ok(Output::Report(r))
}

fn lcs(input: &Input, degree: &Degree) -> Result<Output, Error> {
    let a = arrangement(input)?;
    let h = Holonomy::compute(&a, &options(degree.max_degree)?)?;
    let check = lcs_product_check(&a, &h, degree.max_degree)?;
    let formula = lcs_ranks_decomposable(&a, h.max_degree());
    let mut r = Report::new("lcs");
    header(&mut r, &a);
    r.line(format!("{:>6} {:>8} {:>8}", "degree", "phi", "formula"));
    for (d, phi) in h.ranks_q().into_iter().enumerate() {
        let d = d + 1;
        let f = formula.get(d).unwrap_or(0);
        r.field(format!("phi.{d}"), phi);
        r.field(format!("formula.{d}"), f);
        r.line(format!("{d:>6} {phi:>8} {f:>8}"));
    }
    r.field("product", series_text(&check.product));
    r.field("closed_form", series_text(&check.closed_form));
    r.line(format!("prod (1 - t^r)^phi_r: {}", check.product));
    r.line(format!("closed form:          {}", check.closed_form));
    r.verdict(check.holds);
    Ok(Output::Report(r))
}

fn chen(input: &Input, degree: &Degree, direct: bool) -> Result<Output, Error> {
    let a = arrangement(input)?;
    let formula = chen_ranks_decomposable(&a, degree.max_degree);
    let direct_table = if direct {
        let h = Holonomy::compute(&a, &options(degree.max_degree)?)?;
        Some(chen_ranks_direct(&h, degree.max_degree)?)
    } else {
        None
    };
    let mut r = Report::new("chen");
    header(&mut r, &a);
    r.line(format!("{:>6} {:>8} {:>8}", "degree", "formula", "direct"));
    let mut agree = true;
    for d in 1..=degree.max_degree {
        let f = formula.get(d).unwrap_or(0);
        r.field(format!("theta_formula.{d}"), f);
        if d >= 2 {
            r.field(format!("lower_bound.{d}"), chen_lower_bound(&a, d));
        }
        let shown = match &direct_table {
            Some(t) => {
                let v = t.get(d).unwrap_or(0);
                r.field(format!("theta_direct.{d}"), v);
                agree &= v == f;
                v.to_string()
            }
            None => "-".to_string(),
        };
        r.line(format!("{d:>6} {f:>8} {shown:>8}"));
    }
    if direct {
        r.field("agree", agree);
        r.verdict(agree);
    }
    Ok(Output::Report(r))
}

fn oracle(input: &Input, max_degree: usize) -> Result<Output, Error> {
    let a = arrangement(input)?;
    let opts = options(max_degree)?;
    let h = Holonomy::compute(&a, &opts)?;
    let dims = quadratic_algebra_dims(&a, max_degree, opts.guard)?;
    let extracted = holonomy_dims_from_hilbert(&dims)?;
    let mut r = Report::new("oracle");
    header(&mut r, &a);
    r.line(format!("{:>6} {:>10} {:>8} {:>8}", "degree", "hilbert", "oracle", "rank_q"));
    let mut agree = true;
    for d in 1..=max_degree {
        let ours = h.rank_q(d)? as u128;
        let theirs = extracted[d - 1];
        agree &= ours == theirs;
        r.field(format!("hilbert.{d}"), dims[d]);
        r.field(format!("oracle.{d}"), theirs);
        r.field(format!("rank_q.{d}"), ours);
        r.line(format!("{d:>6} {:>10} {theirs:>8} {ours:>8}", dims[d]));
    }
    r.field("agree", agree);
    r.verdict(agree);
    Ok(Output::Report(r))
}

fn hs_check(input: &Input, exponents: &[u64], degree: &Degree) -> Result<Output, Error> {
    let a = arrangement(input)?;
    let check = hypersolvable_consistency(&a, exponents, degree.max_degree)?;
    let mut r = Report::new("hs-check");
    header(&mut r, &a);
    r.field("exponents", list(exponents));
    r.field("lhs", series_text(&check.lhs));
    r.field("rhs", series_text(&check.rhs));
    r.line(format!("prod (1 + d_i t):           {}", check.lhs));
    r.line(format!("from the rank-2 flats:      {}", check.rhs));
    r.verdict(check.holds);
    Ok(Output::Report(r))
}

fn examples() -> Output {
    let mut r = Report::new("examples");
    for (k, name) in names().iter().enumerate() {
        r.field(format!("builtin.{k}"), name);
        r.line(format!("{name:<10} {}", describe(name).unwrap_or_default()));
    }
    Output::Report(r)
}

fn graph_command(cmd: &GraphCommand) -> Result<Output, Error> {
    match cmd {
        GraphCommand::Kappa(input) => {
            let (g, label) = graph(input)?;
            let mut r = Report::new("graph-kappa");
            r.field("label", label.unwrap_or_else(|| "-".into()));
            let mut s = 0;
            loop {
                let k = kappa(&g, s);
                r.field(format!("kappa.{s}"), k);
                r.line(format!("kappa_{s} = {k}"));
                if k == 0 || s + 1 > g.vertex_count() {
                    break;
                }
                s += 1;
            }
            Ok(Output::Report(r))
        }
        GraphCommand::K4Free(input) => {
            let (g, _) = graph(input)?;
            let k3 = kappa(&g, 3);
            let mut r = Report::new("graph-k4-free");
            r.field("kappa.3", k3);
            r.field("not_hypersolvable", nonhypersolvable_cert(&g));
            r.line(format!("K4 subgraphs: {k3}"));
            if nonhypersolvable_cert(&g) {
                r.line("kappa_1 <= 2 kappa_2: decomposable but not hypersolvable");
            }
            r.verdict(k3 == 0);
            Ok(Output::Report(r))
        }
        GraphCommand::Chordal(input) => {
            let (g, _) = graph(input)?;
            let c = is_chordal(&g);
            let mut r = Report::new("graph-chordal");
            r.field("chordal", c);
            r.line(format!("chordal: {c}"));
            r.verdict(c);
            Ok(Output::Report(r))
        }
        GraphCommand::Cone { input, edge } => {
            let (g, label) = graph(input)?;
            let (a, b) = match edge.as_slice() {
                &[a, b] if a >= 1 && b >= 1 => (a - 1, b - 1),
                _ => return Err(Error::InvalidInput("--edge takes two 1-based endpoints a,b".into())),
            };
            let coned = cone_edge(&g, (a, b))?;
            let label = label.map(|l| format!("{l}+cone"));
            Ok(Output::Text(format!("{}\n", InputDocument::from_graph(&coned, label).to_json())))
        }
        GraphCommand::Family { i } => {
            let g = family_g_i(*i);
            Ok(Output::Text(format!(
                "{}\n",
                InputDocument::from_graph(&g, Some(format!("gfam-{i}"))).to_json()
            )))
        }
        GraphCommand::GraphicLcs { input, degree } => {
            let (g, label) = graph(input)?;
            let s = graphic_lcs_series(&g, degree.max_degree)?;
            let (k1, k2) = (kappa(&g, 1), kappa(&g, 2));
            let mut r = Report::new("graph-graphic-lcs");
            r.field("label", label.unwrap_or_else(|| "-".into()));
            r.field("kappa.1", k1);
            r.field("kappa.2", k2);
            r.field("series", series_text(&s));
            r.line(format!("(1 - t)^{} (1 - 2t)^{k2} = {s}", k1 as i64 - 2 * k2 as i64));
            Ok(Output::Report(r))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Flats { input, emit_doc } => flats(input, *emit_doc),
        Command::Ranks { input, degree, field } => ranks(input, degree, field),
        Command::Decomposable { input } => decomposable(input),
        Command::Lcs { input, degree } => lcs(input, degree),
        Command::Chen { input, degree, direct } => chen(input, degree, *direct),
        Command::Graph(g) => graph_command(g),
        Command::Oracle { input, max_degree } => oracle(input, *max_degree),
        Command::HsCheck {
            input,
            exponents,
            degree,
        } => hs_check(input, exponents, degree),
        Command::Examples => Ok(examples()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            print!("{}", r.render(cli.machine));
            if cli.assert && r.verdict == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
