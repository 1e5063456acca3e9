//! Command-line interface: load documents of named maps, run the group
//! operations and the conjugacy/centralizer machinery, and emit results as
//! JSON documents (so outputs can be piped back in) or plain text.
//!
//! Exit codes: 0 on success (and positive decisions), 1 for negative
//! decisions (not conjugate, oracle deviation over tolerance), 2 for errors.

use clap::{Parser, Subcommand};
use std::collections::BTreeMap;
use std::process::ExitCode;

use ppconj::affgroup::AffGerm;
use ppconj::centralizer::{classify_centralizer, FactorKind};
use ppconj::conjugacy::{boxes, stair_auto, StairResult};
use ppconj::error::Error;
use ppconj::exactnum::{parse_rational, FieldSpec, QuadExt};
use ppconj::io::{document_to_string, parse_document, MapDocument};
use ppconj::mather::{decide_conjugacy_translation_class, invariant, TranslationConjugacy};
use ppconj::oracle::max_deviation;
use ppconj::pmap::{interpolate, PiecewiseProjMap};
use ppconj::random::{random_map, rng_from_seed, RandomClass};

#[derive(Parser)]
#[command(
    name = "ppconj",
    about = "Exact piecewise projective homeomorphisms of the line: group \
             operations, conjugacy, centralizers"
)]
struct Cli {
    /// Print numeric output as decimals with this many fractional digits
    /// instead of exact values.
    #[arg(long, global = true)]
    decimal: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every map in a document.
    Check { file: String },
    /// Compose two maps: outputs `f ∘ g` as a document.
    Compose {
        file: String,
        f: String,
        g: String,
        #[arg(long, default_value = "result")]
        name: String,
    },
    /// Invert a map.
    Invert {
        file: String,
        name: String,
        #[arg(long = "as", default_value = "result")]
        out_name: String,
    },
    /// Integer power of a map (negative allowed).
    Power {
        file: String,
        name: String,
        n: i64,
        #[arg(long = "as", default_value = "result")]
        out_name: String,
    },
    /// Evaluate a map at an exact rational point.
    Apply {
        file: String,
        name: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Joint affinity box edges of two maps.
    Boxes { file: String, y: String, z: String },
    /// Search for a conjugator with the prescribed germ at -inf.
    Stair {
        file: String,
        y: String,
        z: String,
        /// Germ as `SLOPE,INTERCEPT` (exact rationals).
        #[arg(long, allow_hyphen_values = true)]
        germ: String,
        #[arg(long, default_value_t = 256)]
        max_n: u32,
    },
    /// Decide conjugacy of two one-bump maps with translation germs.
    ConjugateTranslationClass {
        file: String,
        y: String,
        z: String,
        #[arg(long, default_value_t = 256)]
        max_n: u32,
    },
    /// Circle-map invariant of a translation-germ one-bump map.
    Mather { file: String, name: String },
    /// Centralizer signature `Z^n x R^m x H^k`.
    Centralizer { file: String, name: String },
    /// Piecewise-affine map sending one increasing tuple to another.
    Transitive {
        /// Comma-separated exact rationals.
        #[arg(long = "from", allow_hyphen_values = true)]
        from: String,
        #[arg(long = "to", allow_hyphen_values = true)]
        to: String,
    },
    /// Render the graph of a map as SVG.
    Plot {
        file: String,
        name: String,
        #[arg(short, long)]
        output: String,
        /// Plot range as `LO,HI`.
        #[arg(long, default_value = "-5,5", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = ppconj::plot::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Generate seeded random maps as a document.
    Random {
        #[arg(long)]
        seed: u64,
        /// One of: general, below, above, translation.
        #[arg(long, default_value = "general")]
        class: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Double-precision cross-check that two maps agree pointwise.
    Oracle {
        file: String,
        f: String,
        g: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

fn load_document(path: &str) -> Result<MapDocument, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::IoError(format!("{path}: {e}")))?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::ParseError(path.into(), e.to_string()))?;
    if let Ok(env_d) = std::env::var("PPCONJ_FIELD_D") {
        let env_d: u64 = env_d.parse().map_err(|_| {
            Error::ParseError("PPCONJ_FIELD_D".into(), "must be a positive integer".into())
        })?;
        match value.get("field_d").and_then(|v| v.as_u64()) {
            Some(file_d) if file_d != env_d => {
                eprintln!(
                    "warning: PPCONJ_FIELD_D={env_d} ignored; file sets field_d={file_d}"
                );
            }
            Some(_) => {}
            None => {
                if let Some(obj) = value.as_object_mut() {
                    obj.insert("field_d".into(), serde_json::json!(env_d));
                }
            }
        }
    }
    parse_document(&value.to_string())
}

fn parse_point(s: &str, spec: FieldSpec) -> Result<QuadExt, Error> {
    Ok(QuadExt::from_rational(parse_rational(s.trim())?, spec))
}

fn parse_tuple(s: &str, spec: FieldSpec) -> Result<Vec<QuadExt>, Error> {
    s.split(',').map(|p| parse_point(p, spec)).collect()
}

fn print_number(x: &QuadExt, decimal: Option<u32>) {
    match decimal {
        Some(p) => println!("{}", x.to_decimal(p)),
        None => println!("{x}"),
    }
}

fn print_map_doc(spec: FieldSpec, name: &str, m: &PiecewiseProjMap) {
    let mut maps = BTreeMap::new();
    maps.insert(name.to_string(), m.clone());
    println!("{}", document_to_string(&MapDocument { spec, maps }));
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Check { file } => {
            let doc = load_document(&file)?;
            for (name, m) in &doc.maps {
                println!(
                    "{name}: ok ({} breakpoints, {} pieces)",
                    m.breakpoints().len(),
                    m.pieces().len()
                );
            }
            Ok(0)
        }
        Command::Compose { file, f, g, name } => {
            let doc = load_document(&file)?;
            let result = doc.get(&f)?.compose(doc.get(&g)?);
            print_map_doc(doc.spec, &name, &result);
            Ok(0)
        }
        Command::Invert {
            file,
            name,
            out_name,
        } => {
            let doc = load_document(&file)?;
            print_map_doc(doc.spec, &out_name, &doc.get(&name)?.inverse());
            Ok(0)
        }
        Command::Power {
            file,
            name,
            n,
            out_name,
        } => {
            let doc = load_document(&file)?;
            print_map_doc(doc.spec, &out_name, &doc.get(&name)?.pow(n));
            Ok(0)
        }
        Command::Apply { file, name, point } => {
            let doc = load_document(&file)?;
            let t = parse_point(&point, doc.spec)?;
            print_number(&doc.get(&name)?.apply(&t), cli.decimal);
            Ok(0)
        }
        Command::Boxes { file, y, z } => {
            let doc = load_document(&file)?;
            let (l, r) = boxes(doc.get(&y)?, doc.get(&z)?);
            match cli.decimal {
                Some(p) => println!("L = {}\nR = {}", l.to_decimal(p), r.to_decimal(p)),
                None => println!("L = {l}\nR = {r}"),
            }
            Ok(0)
        }
        Command::Stair {
            file,
            y,
            z,
            germ,
            max_n,
        } => {
            let doc = load_document(&file)?;
            let parts: Vec<&str> = germ.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::ParseError(
                    germ,
                    "germ must be SLOPE,INTERCEPT".into(),
                ));
            }
            let slope = parse_point(parts[0], doc.spec)?;
            let intercept = parse_point(parts[1], doc.spec)?;
            let g0 = AffGerm::new(slope, intercept)?;
            match stair_auto(doc.get(&y)?, doc.get(&z)?, &g0, max_n)? {
                StairResult::Conjugator { g, n } => {
                    eprintln!("conjugator found at N = {n}");
                    print_map_doc(doc.spec, "g", &g);
                    Ok(0)
                }
                StairResult::NotConjugateWithGerm(why) => {
                    println!("not conjugate with this germ: {why:?}");
                    Ok(1)
                }
            }
        }
        Command::ConjugateTranslationClass { file, y, z, max_n } => {
            let doc = load_document(&file)?;
            match decide_conjugacy_translation_class(doc.get(&y)?, doc.get(&z)?, max_n)? {
                TranslationConjugacy::Conjugate {
                    g,
                    rotation,
                    all_rotations,
                } => {
                    eprintln!(
                        "conjugate (rotation {rotation}{})",
                        if all_rotations {
                            ", every rotation matches"
                        } else {
                            ""
                        }
                    );
                    print_map_doc(doc.spec, "g", &g);
                    Ok(0)
                }
                TranslationConjugacy::NotConjugate => {
                    println!("not conjugate");
                    Ok(1)
                }
            }
        }
        Command::Mather { file, name } => {
            let doc = load_document(&file)?;
            let f = invariant(doc.get(&name)?)?;
            println!("power: {}", f.power());
            println!(
                "rotation: {}",
                if f.is_rotation() { "yes" } else { "no" }
            );
            let mut cuts = vec!["-1".to_string()];
            cuts.extend(f.breakpoints().iter().map(|b| b.to_string()));
            cuts.push("0".to_string());
            for (i, p) in f.pieces().iter().enumerate() {
                println!("  [{}, {}]  {}", cuts[i], cuts[i + 1], p);
            }
            Ok(0)
        }
        Command::Centralizer { file, name } => {
            let doc = load_document(&file)?;
            let sig = classify_centralizer(doc.get(&name)?)?;
            let (n, m, k) = sig.ranks();
            println!("Z^{n} x R^{m} x H^{k}");
            for fct in &sig.factors {
                let kind = match fct.kind {
                    FactorKind::Cyclic => "Z",
                    FactorKind::Line => "R",
                    FactorKind::WholeGroup => "H",
                };
                println!(
                    "  ({}, {})  {}{}",
                    fct.lo,
                    fct.hi,
                    kind,
                    if fct.caveat {
                        "  (discrete by germ shape)"
                    } else {
                        ""
                    }
                );
            }
            Ok(0)
        }
        Command::Transitive { from, to } => {
            let spec = FieldSpec::rational();
            let a = parse_tuple(&from, spec)?;
            let b = parse_tuple(&to, spec)?;
            let f = interpolate(&a, &b)?;
            print_map_doc(spec, "result", &f);
            Ok(0)
        }
        Command::Plot {
            file,
            name,
            output,
            range,
            samples,
        } => {
            let doc = load_document(&file)?;
            let parts: Vec<&str> = range.split(',').collect();
            let (lo, hi) = match parts.as_slice() {
                [a, b] => (
                    a.trim().parse::<f64>().map_err(|e| {
                        Error::ParseError(range.clone(), e.to_string())
                    })?,
                    b.trim().parse::<f64>().map_err(|e| {
                        Error::ParseError(range.clone(), e.to_string())
                    })?,
                ),
                _ => {
                    return Err(Error::ParseError(
                        range,
                        "range must be LO,HI".into(),
                    ))
                }
            };
            let svg = ppconj::plot::render_svg(doc.get(&name)?, lo, hi, samples);
            std::fs::write(&output, svg)
                .map_err(|e| Error::IoError(format!("{output}: {e}")))?;
            eprintln!("wrote {output}");
            Ok(0)
        }
        Command::Random { seed, class, count } => {
            let class = RandomClass::parse(&class).ok_or_else(|| {
                Error::ParseError(class, "unknown class".into())
            })?;
            let spec = FieldSpec::rational();
            let mut rng = rng_from_seed(seed);
            let mut maps = BTreeMap::new();
            for i in 0..count.max(1) {
                maps.insert(format!("m{i}"), random_map(&mut rng, spec, class));
            }
            println!("{}", document_to_string(&MapDocument { spec, maps }));
            Ok(0)
        }
        Command::Oracle {
            file,
            f,
            g,
            samples,
            tolerance,
        } => {
            let doc = load_document(&file)?;
            let dev = max_deviation(doc.get(&f)?, doc.get(&g)?, samples);
            println!("max deviation over {samples} samples: {dev:.3e}");
            Ok(if dev < tolerance { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
