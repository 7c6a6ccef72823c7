use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mckay_e8::classify::{classify_with, e8_groups, ClassifyOptions};
use mckay_e8::cusps::{cusps_of_gamma0, CuspReport};
use mckay_e8::diagram::{build_graph, e8_vertex_data_bounded, emit_dot, N_GAMMA_BOUND};
use mckay_e8::exact::{fmt_rational, ProjectiveMatrix};
use mckay_e8::groupsys::{congruence_level, generators, GroupDescriptor};
use mckay_e8::lattice::{hyperdistance, reduce, LatticeName};
use mckay_e8::super_analogue::{
    eta_quotient_series, frame_shape_catalog, numeric_invariance_check, super_group, super_table, FrameShape,
    DEFAULT_ORDER, DEFAULT_TOL,
};
use mckay_e8::tree::{hypercircle, index_g1, is_cell, padic_projection, thread};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "mckay-e8", version, about = "Projective lattices, arithmetic groups and the affine E8 diagram")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Shorthand for --format dot.
    #[arg(long, global = true)]
    dot: bool,
    /// Search bound for N_Γ in `diagram`.
    #[arg(long, global = true, default_value_t = N_GAMMA_BOUND)]
    max_n: u64,
    /// Number of series coefficients.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Tolerance for the numeric invariance check.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice name M,b of the coset PSL2(Z)·A.
    Reduce {
        #[arg(value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix: ProjectiveMatrix,
    },
    /// Hyperdistance between two lattices.
    Hyperdistance {
        #[arg(value_parser = parse_lattice, allow_hyphen_values = true)]
        from: LatticeName,
        #[arg(value_parser = parse_lattice, allow_hyphen_values = true)]
        to: LatticeName,
    },
    /// All lattices at hyperdistance N from the centre.
    Hypercircle {
        #[arg(value_parser = parse_lattice, allow_hyphen_values = true)]
        center: LatticeName,
        radius: u64,
    },
    /// The thread between two lattices.
    Thread {
        #[arg(value_parser = parse_lattice, allow_hyphen_values = true)]
        from: LatticeName,
        #[arg(value_parser = parse_lattice, allow_hyphen_values = true)]
        to: LatticeName,
    },
    /// Whether a set of lattices is a cell.
    Cell {
        #[arg(value_parser = parse_lattice, allow_hyphen_values = true, required = true)]
        lattices: Vec<LatticeName>,
    },
    /// p-adic projection of a lattice.
    Project {
        #[arg(value_parser = parse_lattice, allow_hyphen_values = true)]
        lattice: LatticeName,
        p: u64,
    },
    /// Index of Γ₀(N) in PSL2(Z).
    Index { n: u64 },
    /// Cusps and widths of Γ₀(N).
    Cusps { n: u64 },
    /// The nine groups, or details of one descriptor.
    Groups {
        #[arg(value_parser = parse_group)]
        group: Option<GroupDescriptor>,
    },
    /// Congruence level of a group.
    Level {
        #[arg(value_parser = parse_group)]
        group: GroupDescriptor,
    },
    /// Groups satisfying the four classification conditions.
    Classify {
        /// Drop the width condition.
        #[arg(long)]
        relax_width: bool,
        /// Upper bound on the index in G₁.
        #[arg(long, default_value_t = 12)]
        index_bound: u64,
    },
    /// Vertex data and the unique graph on the nine groups.
    Diagram,
    /// Scaled groups, Frame shapes and their eta quotients.
    Super {
        #[arg(long, conflicts_with_all = ["series", "check_invariance"])]
        frame_shapes: bool,
        /// Print each eta quotient to K coefficients.
        #[arg(long, value_name = "K", conflicts_with = "check_invariance")]
        series: Option<usize>,
        /// Check numerical invariance under each scaled group.
        #[arg(long)]
        check_invariance: bool,
    },
    /// q-expansion of the eta quotient of a Frame shape.
    Eta {
        #[arg(value_parser = parse_frame_shape)]
        shape: FrameShape,
    },
}

fn parse_matrix(s: &str) -> Result<ProjectiveMatrix, String> {
    s.parse().map_err(|e| format!("malformed matrix literal `{s}`: {e}"))
}

fn parse_lattice(s: &str) -> Result<LatticeName, String> {
    s.parse().map_err(|e| format!("malformed lattice name `{s}`: {e}"))
}

fn parse_group(s: &str) -> Result<GroupDescriptor, String> {
    s.parse().map_err(|e| format!("malformed group name `{s}`: {e}"))
}

fn parse_frame_shape(s: &str) -> Result<FrameShape, String> {
    s.parse().map_err(|e| format!("malformed Frame shape `{s}`: {e}"))
}

enum Failure {
    Usage(String),
    Domain(mckay_e8::Error),
}

impl From<mckay_e8::Error> for Failure {
    fn from(e: mckay_e8::Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize>(v: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn cusp_text(r: &CuspReport) -> String {
    let mut out = String::new();
    for c in &r.cusps {
        let names: Vec<String> = c.orbit.iter().map(|l| l.to_string()).collect();
        writeln!(out, "width {}: {}", fmt_rational(&c.width), names.join(" ")).unwrap();
    }
    out
}

#[derive(Serialize)]
struct GroupDetails {
    group: GroupDescriptor,
    generators: Vec<ProjectiveMatrix>,
}

#[derive(Serialize)]
struct SeriesEntry {
    frame_shape: FrameShape,
    series: mckay_e8::super_analogue::IntegerPowerSeries,
}

#[derive(Serialize)]
struct InvarianceEntry {
    group: GroupDescriptor,
    frame_shape: FrameShape,
    invariant: bool,
}

fn run(cli: &Cli) -> Outcome {
    let format = match (cli.json, cli.dot) {
        (true, true) => return Err(Failure::Usage("--json and --dot are exclusive".into())),
        (true, false) => Format::Json,
        (false, true) => Format::Dot,
        _ => cli.format,
    };
    if format == Format::Dot && !matches!(cli.command, Command::Diagram) {
        return Err(Failure::Usage("dot output is only available for `diagram`".into()));
    }
    let as_json = format == Format::Json;
    match &cli.command {
        Command::Reduce { matrix } => {
            let l = reduce(matrix);
            if as_json { json(&l) } else { Ok(format!("{l}\n")) }
        }
        Command::Hyperdistance { from, to } => {
            let d = hyperdistance(from, to).to_string();
            if as_json { json(&d) } else { Ok(format!("{d}\n")) }
        }
        Command::Hypercircle { center, radius } => {
            let hc = hypercircle(center, *radius);
            if as_json { json(&hc) } else { Ok(lines(&hc.members)) }
        }
        Command::Thread { from, to } => {
            let th = thread(from, to)?;
            if as_json { json(&th) } else { Ok(lines(&th.members)) }
        }
        Command::Cell { lattices } => {
            let c = is_cell(lattices)?;
            if as_json { json(&c) } else { Ok(format!("{c}\n")) }
        }
        Command::Project { lattice, p } => {
            let l = padic_projection(lattice, *p)?;
            if as_json { json(&l) } else { Ok(format!("{l}\n")) }
        }
        Command::Index { n } => {
            check_positive(*n)?;
            let i = index_g1(*n);
            if as_json { json(&i) } else { Ok(format!("{i}\n")) }
        }
        Command::Cusps { n } => {
            check_positive(*n)?;
            let r = cusps_of_gamma0(*n);
            if as_json { json(&r) } else { Ok(cusp_text(&r)) }
        }
        Command::Groups { group: None } => {
            let gs = e8_groups();
            if as_json { json(&gs) } else { Ok(lines(&gs)) }
        }
        Command::Groups { group: Some(g) } => {
            let d = GroupDetails { group: g.clone(), generators: generators(g)? };
            if as_json {
                json(&d)
            } else {
                let mut out = format!("{g}: h={} n={} labels={:?}\n", g.h(), g.n(), g.al_labels());
                out.push_str(&lines(&d.generators));
                Ok(out)
            }
        }
        Command::Level { group } => {
            let l = congruence_level(group)?;
            if as_json { json(&l) } else { Ok(format!("{l}\n")) }
        }
        Command::Classify { relax_width, index_bound } => {
            let opts = ClassifyOptions { require_width: !relax_width, max_index: *index_bound, ..Default::default() };
            let c = classify_with(&opts)?;
            if as_json { json(&c.groups) } else { Ok(lines(&c.groups)) }
        }
        Command::Diagram => {
            let data = e8_vertex_data_bounded(cli.max_n)?;
            let g = build_graph(&data)?;
            match format {
                Format::Json => json(&g),
                Format::Dot => Ok(emit_dot(&g)),
                Format::Text => {
                    let mut out = String::from("group\tN\ta\tgamma0\tlevel\tlev0\tval\tfaithful\n");
                    for v in &g.vertices {
                        writeln!(
                            out,
                            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                            v.group, v.n_gamma, v.a_gamma, v.gamma0, v.level, v.normalized_level, v.valency, v.faithful
                        )
                        .unwrap();
                    }
                    for &(i, j) in &g.edges {
                        writeln!(out, "{} -- {}", g.vertices[i].group, g.vertices[j].group).unwrap();
                    }
                    Ok(out)
                }
            }
        }
        Command::Super { frame_shapes, series, check_invariance } => {
            if *frame_shapes {
                let shapes = frame_shape_catalog();
                return if as_json { json(&shapes) } else { Ok(lines(&shapes)) };
            }
            if let Some(k) = series {
                let entries: Vec<SeriesEntry> = frame_shape_catalog()
                    .into_iter()
                    .map(|fs| Ok(SeriesEntry { series: eta_quotient_series(&fs, *k)?, frame_shape: fs }))
                    .collect::<Result<_, mckay_e8::Error>>()?;
                return if as_json {
                    json(&entries)
                } else {
                    Ok(entries.iter().map(|e| format!("{}: {}\n", e.frame_shape, e.series)).collect())
                };
            }
            if *check_invariance {
                let tau = Complex64::new(0.1, 0.8);
                let mut entries = Vec::new();
                for (g, fs) in e8_groups().iter().zip(frame_shape_catalog()) {
                    let sg = super_group(g)?;
                    let invariant = numeric_invariance_check(&fs, &sg, tau, cli.tol)?;
                    entries.push(InvarianceEntry { group: sg, frame_shape: fs, invariant });
                }
                return if as_json {
                    json(&entries)
                } else {
                    Ok(entries.iter().map(|e| format!("{}\t{}\t{}\n", e.group, e.frame_shape, e.invariant)).collect())
                };
            }
            let table = super_table()?;
            if as_json {
                json(&table)
            } else {
                Ok(table.iter().map(|e| format!("{}\t{}\t{}\n", e.group, e.super_group, e.frame_shape)).collect())
            }
        }
        Command::Eta { shape } => {
            let s = eta_quotient_series(shape, cli.order)?;
            if as_json { json(&s) } else { Ok(format!("{s}\n")) }
        }
    }
}

fn check_positive(n: u64) -> Result<(), Failure> {
    if n == 0 {
        Err(Failure::Usage("N must be positive".into()))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
