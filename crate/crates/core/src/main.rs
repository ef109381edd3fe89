use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use weakmonads::entwine::{self, Handedness, LiftKind};
use weakmonads::io::{read_structure, write_structure, Structure};
use weakmonads::lifting::{
    build_lifted_coring, lifted_right_action, recover_psi, WreathModuleContext,
};
use weakmonads::linalg::FieldSpec;
use weakmonads::premonad::{premonad_to_wreath, roundtrip_forward, roundtrip_reverse, wreath_to_premonad};
use weakmonads::report::{Report, Verdict};
use weakmonads::sample;
use weakmonads::structures::{
    dual_algebra, dual_coalgebra, group_algebra, groupoid_algebra, matrix_coalgebra,
    premonad_retract, GroupPresentation, GroupoidPresentation,
};
use weakmonads::{Error, Result};

/// Exact checkers and constructions for weak monads, weak wreaths,
/// entwining structures and weak bialgebras, over the rationals or a
/// prime field.
#[derive(Parser)]
#[command(name = "weakmonads", version, about)]
struct Cli {
    /// Emit machine-readable JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum HandArg {
    Right,
    Left,
}

impl From<HandArg> for Handedness {
    fn from(h: HandArg) -> Handedness {
        match h {
            HandArg::Right => Handedness::Right,
            HandArg::Left => Handedness::Left,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Iota,
    Pi,
    Lax,
}

impl From<KindArg> for LiftKind {
    fn from(k: KindArg) -> LiftKind {
        match k {
            KindArg::Iota => LiftKind::Iota,
            KindArg::Pi => LiftKind::Pi,
            KindArg::Lax => LiftKind::Lax,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of a structure file, dispatching on its kind.
    Check { file: PathBuf },
    /// Classify an entwining file against all four axiom families.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "right")]
        hand: HandArg,
    },
    /// Build the lifted coring of an entwining file.
    Lift {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pre-monad operations.
    Premonad {
        #[command(subcommand)]
        cmd: PremonadCmd,
    },
    /// Conversions between wreaths and composite pre-monads.
    Wreath {
        #[command(subcommand)]
        cmd: WreathCmd,
    },
    /// Exact round-trip verifications.
    Roundtrip {
        #[command(subcommand)]
        cmd: RoundtripCmd,
    },
    /// Randomized law suites.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Deterministic example families.
    Generate {
        #[command(subcommand)]
        cmd: GenerateCmd,
    },
    /// Seeded random instances of a named family; the output always
    /// passes its own validity checker.
    Sample {
        family: String,
        #[arg(long, default_value = "F7")]
        field: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the weak-bialgebra characterization on a weak-bialgebra file.
    CharacterizeWba { file: PathBuf },
}

#[derive(Subcommand)]
enum PremonadCmd {
    /// Split the canonical idempotent and report the retract monad.
    Retract {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WreathCmd {
    /// The composite pre-monad of a wreath file.
    ToPremonad {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the wreath data from a pre-monad file with declared
    /// factors.
    FromPremonad {
        file: PathBuf,
        #[arg(long)]
        s_dim: usize,
        /// Algebra file for the base monad.
        #[arg(long)]
        t: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RoundtripCmd {
    /// Wreath to pre-monad and back, exact in both directions.
    Thm23 { file: PathBuf },
    /// Module correspondence round trips over a wreath file.
    Prop38 {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Structure-map recovery from the lifted coring data.
    Psi {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "iota")]
        kind: KindArg,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// The 2-category law suite on seeded random configurations.
    EmwLaws {
        #[arg(long, default_value = "F7")]
        field: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The membership equivalence suite.
    Membership {
        #[arg(long, default_value = "F7")]
        field: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// The cyclic group algebra with grouplike comultiplication.
    GroupAlgebra {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A groupoid algebra: identity groupoid by default, pair groupoid
    /// with --pairs.
    GroupoidAlgebra {
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        pairs: bool,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The comatrix coalgebra on an n-by-n coordinate space.
    MatrixCoalgebra {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dual of an algebra or coalgebra file.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The right-handed structure map induced by a weak-bialgebra file.
    PsiR {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The left-handed structure map induced by a weak-bialgebra file.
    PsiL {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_field_arg(s: &str) -> Result<FieldSpec> {
    if s == "Q" || s == "q" {
        return Ok(FieldSpec::Q);
    }
    let digits = s.strip_prefix('F').or_else(|| s.strip_prefix('f')).unwrap_or(s);
    let digits = digits.strip_prefix('p').unwrap_or(digits);
    digits
        .parse::<u64>()
        .map_err(|_| Error::InvalidPresentation(format!("unknown field {s:?}")))
        .and_then(FieldSpec::prime)
}

fn default_seed(seed: Option<u64>) -> u64 {
    seed.or_else(|| {
        std::env::var("WEAKMONADS_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

struct Output {
    json: bool,
}

/// Print, tolerating a closed downstream pipe.
fn pr(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

impl Output {
    fn report(&self, command: &str, rep: &Report, extra: serde_json::Value) -> bool {
        if self.json {
            let mut obj = json!({
                "command": command,
                "pass": rep.pass(),
                "report": rep,
            });
            if let (Some(o), Some(e)) = (obj.as_object_mut(), extra.as_object()) {
                for (k, v) in e {
                    o.insert(k.clone(), v.clone());
                }
            }
            pr(&format!(
                "{}\n",
                serde_json::to_string_pretty(&obj).unwrap()
            ));
        } else {
            pr(&format!("{rep}"));
            if let Some(e) = extra.as_object() {
                for (k, v) in e {
                    pr(&format!("{k}: {v}\n"));
                }
            }
        }
        rep.pass()
    }
}

fn maybe_write(out: &Option<PathBuf>, s: &Structure) -> Result<()> {
    if let Some(path) = out {
        write_structure(path, s)?;
        eprintln!("wrote {} ({})", path.display(), s.kind());
    }
    Ok(())
}

fn expect_entwining(path: &Path) -> Result<weakmonads::lifting::EntwiningDatum> {
    match read_structure(path)? {
        Structure::Entwining(d) => Ok(d),
        other => Err(Error::InvalidPresentation(format!(
            "expected an entwining file, got kind {:?}",
            other.kind()
        ))),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let out = Output { json: cli.json };
    match cli.cmd {
        Cmd::Check { file } => {
            let s = read_structure(&file)?;
            let rep = s.check();
            Ok(out.report("check", &rep, json!({ "kind": s.kind() })))
        }
        Cmd::Classify { file, hand } => {
            let d = expect_entwining(&file)?;
            let cls = entwine::classify_entwining(&d, hand.into())?;
            let extra = json!({
                "mixed_dl": cls.mixed_dl,
                "weak": cls.weak,
                "partial": cls.partial,
                "lax": cls.lax,
            });
            out.report("classify", &cls.report, extra);
            Ok(true)
        }
        Cmd::Lift { file, kind, out: path } => {
            let d = expect_entwining(&file)?;
            let built = build_lifted_coring(&d, kind.into())?;
            maybe_write(&path, &Structure::Coring(built.coring.clone()))?;
            let extra = json!({ "carrier_dim": built.coring.carrier.dim });
            Ok(out.report("lift", &built.report, extra))
        }
        Cmd::Premonad { cmd } => match cmd {
            PremonadCmd::Retract { file, out: path } => {
                let p = match read_structure(&file)? {
                    Structure::PreMonad(p) => p,
                    other => {
                        return Err(Error::InvalidPresentation(format!(
                            "expected a premonad file, got kind {:?}",
                            other.kind()
                        )))
                    }
                };
                let (monad, split) = premonad_retract(&p)?;
                maybe_write(&path, &Structure::Algebra(monad.clone()))?;
                let rep = monad.check();
                let extra = json!({ "retract_dim": split.retract_dim });
                Ok(out.report("premonad retract", &rep, extra))
            }
        },
        Cmd::Wreath { cmd } => match cmd {
            WreathCmd::ToPremonad { file, out: path } => {
                let w = match read_structure(&file)? {
                    Structure::EmwMonad(w) => w,
                    other => {
                        return Err(Error::InvalidPresentation(format!(
                            "expected an emw_monad file, got kind {:?}",
                            other.kind()
                        )))
                    }
                };
                let (p, rep) = wreath_to_premonad(&w)?;
                maybe_write(&path, &Structure::PreMonad(p))?;
                Ok(out.report("wreath to-premonad", &rep, json!({})))
            }
            WreathCmd::FromPremonad {
                file,
                s_dim,
                t,
                out: path,
            } => {
                let p = match read_structure(&file)? {
                    Structure::PreMonad(p) => p,
                    other => {
                        return Err(Error::InvalidPresentation(format!(
                            "expected a premonad file, got kind {:?}",
                            other.kind()
                        )))
                    }
                };
                let base = match read_structure(&t)? {
                    Structure::Algebra(a) => a,
                    other => {
                        return Err(Error::InvalidPresentation(format!(
                            "expected an algebra file for --t, got kind {:?}",
                            other.kind()
                        )))
                    }
                };
                let w = premonad_to_wreath(&p, s_dim, &base)?;
                maybe_write(&path, &Structure::EmwMonad(w.clone()))?;
                let rep = w.check();
                Ok(out.report("wreath from-premonad", &rep, json!({})))
            }
        },
        Cmd::Roundtrip { cmd } => match cmd {
            RoundtripCmd::Thm23 { file } => {
                let w = match read_structure(&file)? {
                    Structure::EmwMonad(w) => w,
                    other => {
                        return Err(Error::InvalidPresentation(format!(
                            "expected an emw_monad file, got kind {:?}",
                            other.kind()
                        )))
                    }
                };
                let mut rep = roundtrip_forward(&w)?;
                let (p, _) = wreath_to_premonad(&w)?;
                rep.extend(roundtrip_reverse(&p, w.s_dim, &w.base)?);
                Ok(out.report("roundtrip thm23", &rep, json!({})))
            }
            RoundtripCmd::Prop38 { file, trials, seed } => {
                let w = match read_structure(&file)? {
                    Structure::EmwMonad(w) => w,
                    other => {
                        return Err(Error::InvalidPresentation(format!(
                            "expected an emw_monad file, got kind {:?}",
                            other.kind()
                        )))
                    }
                };
                let ctx = WreathModuleContext::from_wreath(&w)?;
                let rep =
                    sample::module_correspondence_suite(&ctx, trials, default_seed(seed));
                Ok(out.report("roundtrip prop38", &rep, json!({})))
            }
            RoundtripCmd::Psi { file, kind } => {
                let d = expect_entwining(&file)?;
                let built = build_lifted_coring(&d, kind.into())?;
                let act = lifted_right_action(&d.algebra, &d.psi, &built.splitting)?;
                let back = recover_psi(
                    &d.algebra,
                    d.coalgebra.dim,
                    &built.splitting,
                    &act,
                )?;
                let mut rep = Report::new("structure-map recovery");
                rep.push(Verdict::of_eq(
                    "4.1",
                    "recovered structure map equals the input",
                    &back,
                    &d.psi,
                ));
                Ok(out.report("roundtrip psi", &rep, json!({})))
            }
        },
        Cmd::Verify { cmd } => match cmd {
            VerifyCmd::EmwLaws {
                field,
                trials,
                max_dim,
                seed,
            } => {
                let f = parse_field_arg(&field)?;
                let rep = sample::emw_law_suite(f, trials, max_dim, default_seed(seed));
                Ok(out.report("verify emw-laws", &rep, json!({ "trials": trials })))
            }
            VerifyCmd::Membership {
                field,
                trials,
                seed,
            } => {
                let f = parse_field_arg(&field)?;
                let s = default_seed(seed);
                let mut rep = sample::membership_equivalence_suite(f, trials, 2, s);
                rep.extend(sample::membership_composition_suite(f, trials, 2, s));
                Ok(out.report("verify membership", &rep, json!({ "trials": trials })))
            }
        },
        Cmd::Generate { cmd } => {
            let s = match cmd {
                GenerateCmd::GroupAlgebra { order, field, out } => {
                    let f = parse_field_arg(&field)?;
                    let h = group_algebra(f, &GroupPresentation::cyclic(order))?;
                    let s = Structure::WeakBialgebra(h);
                    maybe_write(&out, &s)?;
                    s
                }
                GenerateCmd::GroupoidAlgebra {
                    objects,
                    pairs,
                    field,
                    out,
                } => {
                    let f = parse_field_arg(&field)?;
                    let g = if pairs {
                        GroupoidPresentation::pair(objects)
                    } else {
                        GroupoidPresentation::discrete(objects)
                    };
                    let s = Structure::WeakBialgebra(groupoid_algebra(f, &g)?);
                    maybe_write(&out, &s)?;
                    s
                }
                GenerateCmd::MatrixCoalgebra { size, field, out } => {
                    let f = parse_field_arg(&field)?;
                    let s = Structure::Coalgebra(matrix_coalgebra(f, size));
                    maybe_write(&out, &s)?;
                    s
                }
                GenerateCmd::Dual { file, out } => {
                    let s = match read_structure(&file)? {
                        Structure::Algebra(a) => Structure::Coalgebra(dual_coalgebra(&a)),
                        Structure::Coalgebra(c) => Structure::Algebra(dual_algebra(&c)),
                        other => {
                            return Err(Error::InvalidPresentation(format!(
                                "dual expects an algebra or coalgebra file, got {:?}",
                                other.kind()
                            )))
                        }
                    };
                    maybe_write(&out, &s)?;
                    s
                }
                GenerateCmd::PsiR { file, out } => {
                    let h = match read_structure(&file)? {
                        Structure::WeakBialgebra(h) => h,
                        other => {
                            return Err(Error::InvalidPresentation(format!(
                                "expected a weak_bialgebra file, got {:?}",
                                other.kind()
                            )))
                        }
                    };
                    let s = Structure::Entwining(entwine::psi_r(&h)?);
                    maybe_write(&out, &s)?;
                    s
                }
                GenerateCmd::PsiL { file, out } => {
                    let h = match read_structure(&file)? {
                        Structure::WeakBialgebra(h) => h,
                        other => {
                            return Err(Error::InvalidPresentation(format!(
                                "expected a weak_bialgebra file, got {:?}",
                                other.kind()
                            )))
                        }
                    };
                    let s = Structure::Entwining(entwine::psi_l(&h)?);
                    maybe_write(&out, &s)?;
                    s
                }
            };
            let rep = s.check();
            Ok(out.report("generate", &rep, json!({ "kind": s.kind() })))
        }
        Cmd::Sample {
            family,
            field,
            seed,
            out: path,
        } => {
            let f = parse_field_arg(&field)?;
            let seed = default_seed(seed);
            let mut r = sample::rng(seed);
            let s = match family.as_str() {
                "strict_wreath" | "strict-wreath" => {
                    Structure::EmwMonad(sample::sample_strict_wreath(f, &mut r))
                }
                "weak_wreath" | "weak-wreath" | "weak_smash" | "weak-smash" => {
                    Structure::EmwMonad(sample::sample_weak_wreath(f, &mut r, 3))
                }
                "groupoid_wba" | "groupoid-wba" => {
                    Structure::WeakBialgebra(sample::sample_wba(f, &mut r, 6))
                }
                "premonad" => Structure::PreMonad(sample::sample_premonad(f, &mut r)),
                "entwining" => Structure::Entwining(sample::sample_entwining(f, &mut r)),
                "partial_entwining" | "partial-entwining" => {
                    Structure::Entwining(sample::partial_coaction_datum(f)?)
                }
                other => return Err(Error::UnknownFamily(other.into())),
            };
            maybe_write(&path, &s)?;
            let rep = s.check();
            Ok(out.report("sample", &rep, json!({ "kind": s.kind(), "seed": seed })))
        }
        Cmd::CharacterizeWba { file } => {
            let h = match read_structure(&file)? {
                Structure::WeakBialgebra(h) => h,
                other => {
                    return Err(Error::InvalidPresentation(format!(
                        "expected a weak_bialgebra file, got kind {:?}",
                        other.kind()
                    )))
                }
            };
            let c = entwine::characterize_weak_bialgebra(&h)?;
            let extra = json!({
                "wba": c.wba,
                "psi_r_weak": c.psi_r_weak,
                "psi_l_weak": c.psi_l_weak,
                "biconditional": c.biconditional,
            });
            let pass = c.biconditional;
            out.report("characterize-wba", &c.report, extra);
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            // Violated identities exit 1; malformed input exits 2.
            let identity_failure = matches!(
                e,
                Error::AxiomFailed(_)
                    | Error::SharedAxiomFailed
                    | Error::NotPreMonad(_)
                    | Error::NotMonadInEmw(_)
                    | Error::EntwiningKindMismatch(_)
                    | Error::LeftLinearityFailed
                    | Error::NotIdempotent
                    | Error::NotModule(_)
                    | Error::WellDefinednessFailed(_)
                    | Error::PreconditionFailed(_)
            );
            ExitCode::from(if identity_failure { 1 } else { 2 })
        }
    }
}
