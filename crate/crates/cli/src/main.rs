//! Command-line front end: parse a polytope JSON file, dispatch the
//! library computations, and emit JSON or text reports.
//!
//! Exit codes: 0 success, 1 invalid polytope, 2 parse error, 3 internal
//! check failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use ktoric::gkm;
use ktoric::kirwan;
use ktoric::rational::{parse_rat, rat_to_json, render_rat};
use ktoric::{DelzantPolytope, Rat};

#[derive(Parser)]
#[command(name = "ktoric", version, about = "K-theory of symplectic toric manifolds from Delzant polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    /// path to a polytope JSON file
    input: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Delzant conditions and print the validation report
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the vertices with their incident facets
    Vertices {
        #[command(flatten)]
        common: Common,
    },
    /// List the minimal non-faces (Stanley-Reisner generators)
    Nonfaces {
        #[command(flatten)]
        common: Common,
    },
    /// Print the K-theory presentation: generators, ideal I, ideal J
    Presentation {
        #[command(flatten)]
        common: Common,
    },
    /// Print the GKM graph (fixed points, edges, weights)
    Gkm {
        #[command(flatten)]
        common: Common,
    },
    /// Print the critical-value set Z with subsets A, S and the I-generators
    Kernel {
        #[command(flatten)]
        common: Common,
    },
    /// Print the ordinary K-theory rank and the triangular certificate
    Rank {
        #[command(flatten)]
        common: Common,
    },
    /// Run the full cross-check harness
    Verify {
        #[command(flatten)]
        common: Common,
        /// number of randomized monomial samples
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the gradient-flow retraction check
    Flow {
        #[command(flatten)]
        common: Common,
        /// comma-separated rational critical value (default: every nonzero value in Z)
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("KTORIC_LOG")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => e,
    }
}

fn load(common: &Common) -> Result<DelzantPolytope, ExitCode> {
    let text = std::fs::read_to_string(&common.input).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", common.input);
        ExitCode::from(2)
    })?;
    let p = DelzantPolytope::from_json_str(&text).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    log::info!(
        "loaded {}: dimension {}, {} facets",
        common.input,
        p.dim(),
        p.num_facets()
    );
    Ok(p)
}

/// Validity gate shared by every command except `validate`.
fn load_valid(common: &Common) -> Result<DelzantPolytope, ExitCode> {
    let p = load(common)?;
    let report = p.validate();
    if !report.is_valid() {
        eprintln!("error: polytope is not Delzant\n{report}");
        return Err(ExitCode::from(1));
    }
    Ok(p)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn internal(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(3)
}

fn run(command: Command) -> Result<ExitCode, ExitCode> {
    match command {
        Command::Validate { common } => {
            let p = load(&common)?;
            let report = p.validate();
            match common.format {
                Format::Json => print_json(&serde_json::to_value(&report).expect("serializable")),
                Format::Text => println!("{report}"),
            }
            Ok(if report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Vertices { common } => {
            let p = load_valid(&common)?;
            let vertices = p.enumerate_vertices().map_err(internal)?;
            match common.format {
                Format::Json => {
                    let v: Vec<serde_json::Value> = vertices
                        .iter()
                        .enumerate()
                        .map(|(id, v)| {
                            serde_json::json!({
                                "id": id,
                                "point": v.point.iter().map(rat_to_json).collect::<Vec<_>>(),
                                "facets": v.incident.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    print_json(&serde_json::json!({ "vertices": v }));
                }
                Format::Text => {
                    for (id, v) in vertices.iter().enumerate() {
                        let point: Vec<String> = v.point.iter().map(render_rat).collect();
                        let facets: Vec<String> =
                            v.incident.iter().map(|i| format!("F_{}", i + 1)).collect();
                        println!("vertex {id}: ({}) on {}", point.join(", "), facets.join(" "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Nonfaces { common } => {
            let p = load_valid(&common)?;
            let nonfaces = p.minimal_nonfaces().map_err(internal)?;
            match common.format {
                Format::Json => {
                    let v: Vec<Vec<usize>> = nonfaces
                        .iter()
                        .map(|s| s.iter().map(|i| i + 1).collect())
                        .collect();
                    print_json(&serde_json::json!({ "nonfaces": v }));
                }
                Format::Text => {
                    for s in &nonfaces {
                        let names: Vec<String> = s.iter().map(|i| format!("F_{}", i + 1)).collect();
                        println!("{{{}}}", names.join(", "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Presentation { common } => {
            let p = load_valid(&common)?;
            let d = kirwan::build_delzant_data(&p).map_err(internal)?;
            let pres = kirwan::presentation(&p).map_err(internal)?;
            match common.format {
                Format::Json => print_json(&pres.to_json(&d)),
                Format::Text => {
                    println!("generators: x1 .. x{}", pres.num_generators);
                    let i_factored: Vec<String> = pres
                        .nonfaces
                        .iter()
                        .map(|s| {
                            s.iter()
                                .map(|i| format!("(1 - x{}^-1)", i + 1))
                                .collect::<String>()
                        })
                        .collect();
                    println!("I = {{ {} }}", i_factored.join(", "));
                    let j_rendered: Vec<String> =
                        pres.j_gens.iter().map(|g| g.render()).collect();
                    println!("J = {{ {} }}", j_rendered.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gkm { common } => {
            let p = load_valid(&common)?;
            let graph = gkm::build_gkm_graph(&p).map_err(internal)?;
            match common.format {
                Format::Json => print_json(&graph.to_json()),
                Format::Text => {
                    for (id, point) in graph.points.iter().enumerate() {
                        let point: Vec<String> = point.iter().map(render_rat).collect();
                        println!("vertex {id}: ({})", point.join(", "));
                    }
                    for (a, b, w) in &graph.edges {
                        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                        println!("edge {a} -> {b}, α = ({})", w.join(", "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kernel { common } => {
            let p = load_valid(&common)?;
            let d = kirwan::build_delzant_data(&p).map_err(internal)?;
            let z = kirwan::critical_values_z(&d);
            let i_gens = kirwan::kernel_generators(&p).map_err(internal)?;
            match common.format {
                Format::Json => {
                    let zv: Vec<serde_json::Value> = z
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "xi": c.xi.iter().map(rat_to_json).collect::<Vec<_>>(),
                                "A": c.subset_a.iter().map(|i| i + 1).collect::<Vec<_>>(),
                                "S": c.negative_set.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let gens: Vec<String> = i_gens.iter().map(|g| g.render()).collect();
                    print_json(&serde_json::json!({ "Z": zv, "I": gens }));
                }
                Format::Text => {
                    for c in &z {
                        let xi: Vec<String> = c.xi.iter().map(render_rat).collect();
                        let a: Vec<String> =
                            c.subset_a.iter().map(|i| (i + 1).to_string()).collect();
                        let s: Vec<String> =
                            c.negative_set.iter().map(|i| (i + 1).to_string()).collect();
                        println!(
                            "ξ_A = ({}), A = {{{}}}, S = {{{}}}",
                            xi.join(", "),
                            a.join(", "),
                            s.join(", ")
                        );
                    }
                    for g in &i_gens {
                        println!("I-generator: {}", g.render());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { common } => {
            let p = load_valid(&common)?;
            let xi = p.generic_direction().map_err(internal)?;
            let xi: Vec<Rat> = xi.into_iter().map(Rat::from_integer).collect();
            let cert = gkm::equivariant_rank_certificate(&p, &xi).map_err(internal)?;
            match common.format {
                Format::Json => {
                    let matrix: Vec<Vec<String>> = cert
                        .matrix
                        .iter()
                        .map(|row| row.iter().map(|e| e.render()).collect())
                        .collect();
                    print_json(&serde_json::json!({
                        "ordinary_rank": cert.rank,
                        "odd_rank": 0,
                        "certificate": {
                            "triangular": cert.is_triangular(),
                            "restriction_matrix": matrix,
                        },
                    }));
                }
                Format::Text => {
                    println!("K^0 rank: {} (free)", cert.rank);
                    println!("K^1 rank: 0");
                    println!(
                        "equivariant certificate: {} Morse classes, triangular restriction matrix",
                        cert.rank
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            common,
            samples,
            seed,
        } => {
            let p = load_valid(&common)?;
            let report = gkm::verify_presentation(&p, samples, seed).map_err(internal)?;
            match common.format {
                Format::Json => print_json(&serde_json::json!({
                    "i_generators_vanish": report.i_generators_vanish,
                    "j_generators_constant": report.j_generators_constant,
                    "j_constants": report.j_constants,
                    "monomials_in_gamma": report.monomials_in_gamma,
                    "failures": report.failures,
                    "passed": report.all_passed(),
                })),
                Format::Text => {
                    println!(
                        "I-generators vanish at fixed points: {}",
                        if report.i_generators_vanish { "pass" } else { "FAIL" }
                    );
                    println!(
                        "J-generators restrict to constants: {}",
                        if report.j_generators_constant { "pass" } else { "FAIL" }
                    );
                    println!(
                        "randomized monomials in Γ-subring: {}",
                        if report.monomials_in_gamma { "pass" } else { "FAIL" }
                    );
                    for f in &report.failures {
                        println!("failure: {f}");
                    }
                }
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Flow {
            common,
            xi,
            samples,
            seed,
            tmax,
            tol,
        } => {
            let p = load_valid(&common)?;
            let d = kirwan::build_delzant_data(&p).map_err(internal)?;
            let targets: Vec<Vec<Rat>> = match xi {
                Some(text) => {
                    let xi: Result<Vec<Rat>, _> =
                        text.split(',').map(parse_rat).collect();
                    vec![xi.map_err(|e| {
                        eprintln!("error: bad --xi: {e}");
                        ExitCode::from(2)
                    })?]
                }
                None => kirwan::critical_values_z(&d)
                    .into_iter()
                    .map(|c| c.xi)
                    .filter(|xi| !xi.iter().all(Zero::is_zero))
                    .collect(),
            };
            let mut all_ok = true;
            let mut results = Vec::new();
            for xi in &targets {
                let sample_points = kirwan::flow_samples(&d, xi, samples, seed);
                let report = kirwan::flow_retraction_check(&d, xi, &sample_points, tmax, tol)
                    .map_err(internal)?;
                all_ok &= report.all_passed();
                results.push((xi.clone(), report));
            }
            match common.format {
                Format::Json => {
                    let v: Vec<serde_json::Value> = results
                        .iter()
                        .map(|(xi, r)| {
                            serde_json::json!({
                                "xi": xi.iter().map(rat_to_json).collect::<Vec<_>>(),
                                "eps": r.eps,
                                "t_max": r.t_max,
                                "hit_times": r.samples.iter().map(|s| s.hit_time).collect::<Vec<_>>(),
                                "monotone": r.samples.iter().all(|s| s.monotone),
                                "passed": r.all_passed(),
                            })
                        })
                        .collect();
                    print_json(&serde_json::json!({ "flows": v, "passed": all_ok }));
                }
                Format::Text => {
                    for (xi, r) in &results {
                        let xi: Vec<String> = xi.iter().map(render_rat).collect();
                        println!(
                            "ξ_A = ({}): {} samples, ε = {:.6}, {}",
                            xi.join(", "),
                            r.samples.len(),
                            r.eps,
                            if r.all_passed() { "pass" } else { "FAIL" }
                        );
                    }
                }
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}
