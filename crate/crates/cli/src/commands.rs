//! Subcommand implementations and the exit-code contract.

use std::io::{BufRead, Write};

use serde_json::{json, Value};
use thiserror::Error;

use sandpile_lab::asm::{
    check_sorted_recurrent, enumerate_sorted_recurrent_with, EnumerationBackend,
};
use sandpile_lab::cycle_lemma::{
    class_members, enumerate_quasistable_nonneg, recurrent_representative, weight,
    ExtendedConfiguration,
};
use sandpile_lab::polyomino::{enumerate_polyominoes, from_config, word_of};
use sandpile_lab::qt_poly::{
    egge_sum_with, extremal_words, f_cti_with, f_itc_with, itc_sum_term, itc_sum_with,
    qt_schroder_with,
};
use sandpile_lab::render::{render_path_svg, render_polyomino_svg};
use sandpile_lab::schroder::{
    area, enumerate_schroder_words, haglund_bounce, loehr_bounce, mirror_schroder, phi, phi_inv,
    schroder_bounce, schroder_peaks,
};
use sandpile_lab::toppling::{
    canonical_config, enumerate_itc_sequences, itc_sequence_of, topple_cti, topple_itc,
};
use sandpile_lab::verify::{run_suite, CheckKind, Range, Suite};
use sandpile_lab::{
    Configuration, Error, Execution, ItcSequence, Mode, QtPolynomial, SawtoothPolyomino,
    SchroderWord, SplitGraphShape,
};

use crate::{
    EnumerateArgs, Kind, ListFormat, Method, Overlay, PolyArgs, PolyFormat, RenderTarget,
    ReportFormat, StatsArgs, VerifyArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] Error),
    #[error("identity mismatch: {0}")]
    Mismatch(String),
    #[error("conjecture counterexample: {0}")]
    Conjecture(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Domain(Error::Parse(_)) => 2,
            CliError::Domain(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Conjecture(_) => 10,
            CliError::Io(_) => 1,
        }
    }
}

type CliResult = Result<(), CliError>;

fn exec() -> Execution {
    Execution::default()
}

fn shape_of(
    n: Option<usize>,
    d: Option<usize>,
    c: &Configuration,
) -> Result<SplitGraphShape, CliError> {
    let shape = SplitGraphShape::new(
        n.unwrap_or(c.clique.len()),
        d.unwrap_or(c.independent.len()),
    )?;
    c.check_shape(shape)?;
    Ok(shape)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn enumerate(a: &EnumerateArgs, out: &mut impl Write) -> CliResult {
    let shape = SplitGraphShape::new(a.n, a.d)?;
    let ex = exec();
    match a.kind {
        Kind::Recurrent => {
            let configs =
                enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, ex);
            match a.format {
                ListFormat::Text => configs.iter().try_for_each(|c| writeln!(out, "{c}"))?,
                ListFormat::Json => configs.iter().try_for_each(|c| {
                    writeln!(out, "{}", serde_json::to_string(c).expect("json"))
                })?,
                ListFormat::Csv => {
                    writeln!(
                        out,
                        "config,height,level,topple_cti,wtopple_cti,topple_itc,wtopple_itc"
                    )?;
                    let rows = ex.map(&configs, |c| -> Result<String, Error> {
                        let (cti, itc) = (topple_cti(shape, c)?, topple_itc(shape, c)?);
                        Ok(format!(
                            "\"{c}\",{},{},\"{}\",{},\"{}\",{}",
                            c.height(),
                            c.level(shape),
                            join(&cti.sizes()),
                            cti.wtopple(),
                            join(&itc.sizes()),
                            itc.wtopple()
                        ))
                    });
                    for r in rows {
                        writeln!(out, "{}", r?)?;
                    }
                }
            }
        }
        Kind::Words => {
            let words = enumerate_schroder_words(shape.n, shape.d);
            match a.format {
                ListFormat::Text => words.iter().try_for_each(|w| writeln!(out, "{w}"))?,
                ListFormat::Json => words.iter().try_for_each(|w| writeln!(out, "\"{w}\""))?,
                ListFormat::Csv => {
                    writeln!(out, "word,area,bounce")?;
                    for w in &words {
                        writeln!(out, "{w},{},{}", area(w), schroder_bounce(w)?)?;
                    }
                }
            }
        }
        Kind::Polyominoes => {
            let polys = enumerate_polyominoes(shape)?;
            match a.format {
                ListFormat::Text => polys.iter().try_for_each(|p| writeln!(out, "{p}"))?,
                ListFormat::Json => polys.iter().try_for_each(|p| {
                    writeln!(out, "{}", serde_json::to_string(p).expect("json"))
                })?,
                ListFormat::Csv => {
                    writeln!(out, "upper,lower,area")?;
                    for p in &polys {
                        writeln!(
                            out,
                            "{},{},{}",
                            p.upper_string(),
                            p.lower_string(),
                            p.area()
                        )?;
                    }
                }
            }
        }
        Kind::ItcSequences => {
            let seqs = enumerate_itc_sequences(shape.n, shape.d);
            match a.format {
                ListFormat::Text => seqs.iter().try_for_each(|s| writeln!(out, "{s}"))?,
                ListFormat::Json => seqs.iter().try_for_each(|s| {
                    writeln!(out, "{}", serde_json::to_string(s).expect("json"))
                })?,
                ListFormat::Csv => {
                    writeln!(out, "b,a")?;
                    for s in &seqs {
                        writeln!(out, "\"{}\",\"{}\"", join(&s.b), join(&s.a))?;
                    }
                }
            }
        }
        Kind::Quasistable => {
            let all = enumerate_quasistable_nonneg(shape);
            match a.format {
                ListFormat::Text => all.iter().try_for_each(|u| writeln!(out, "{u}"))?,
                ListFormat::Json => all.iter().try_for_each(|u| {
                    writeln!(
                        out,
                        "{}",
                        json!({ "n": shape.n, "d": shape.d, "extended": u.to_string() })
                    )
                })?,
                ListFormat::Csv => {
                    writeln!(out, "config,weight")?;
                    for u in &all {
                        writeln!(out, "\"{u}\",{}", weight(shape, &u.clique))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn config_stats(shape: SplitGraphShape, c: &Configuration) -> Result<Value, CliError> {
    check_sorted_recurrent(shape, c)?;
    let (cti, itc) = (topple_cti(shape, c)?, topple_itc(shape, c)?);
    let word = phi_inv(c)?;
    let m = mirror_schroder(&word);
    Ok(json!({
        "kind": "configuration",
        "n": shape.n,
        "d": shape.d,
        "config": c.to_string(),
        "height": c.height(),
        "level": c.level(shape),
        "topple_cti": cti.sizes(),
        "wtopple_cti": cti.wtopple(),
        "topple_itc": itc.sizes(),
        "wtopple_itc": itc.wtopple(),
        "itc_sequence": itc_sequence_of(&itc)?.to_string(),
        "word": word.to_string(),
        "mirror_word": m.to_string(),
        "area": area(&m),
        "bounce": schroder_bounce(&m)?,
        "peaks": schroder_peaks(&m),
        "polyomino": from_config(shape, c)?,
    }))
}

fn word_stats(w: &SchroderWord) -> Result<Value, CliError> {
    let c = phi(&mirror_schroder(w));
    let shape = SplitGraphShape::new(w.n(), w.d())?;
    Ok(json!({
        "kind": "word",
        "word": w.to_string(),
        "n": w.n(),
        "d": w.d(),
        "area": area(w),
        "bounce": schroder_bounce(w)?,
        "haglund_bounce": haglund_bounce(w),
        "loehr_bounce": loehr_bounce(w),
        "peaks": schroder_peaks(w),
        "config": c.to_string(),
        "level": c.level(shape),
        "wtopple_itc": topple_itc(shape, &c)?.wtopple(),
    }))
}

fn sequence_stats(s: &ItcSequence) -> Result<Value, CliError> {
    let shape = s.shape()?;
    let (lo, up) = extremal_words(s)?;
    Ok(json!({
        "kind": "itc_sequence",
        "sequence": s.to_string(),
        "n": shape.n,
        "d": shape.d,
        "canonical_config": canonical_config(shape, s)?.to_string(),
        "lower_word": lo.to_string(),
        "upper_word": up.to_string(),
        "term": itc_sum_term(s).to_json(),
    }))
}

fn extended_stats(shape: SplitGraphShape, u: &ExtendedConfiguration) -> Result<Value, CliError> {
    let rep = recurrent_representative(shape, u)?;
    let class: Vec<String> = class_members(shape, &rep)?
        .iter()
        .map(|m| m.to_string())
        .collect();
    Ok(json!({
        "kind": "extended",
        "n": shape.n,
        "d": shape.d,
        "extended": u.to_string(),
        "weight": weight(shape, &u.clique),
        "quasi_stable": u.is_quasi_stable(shape),
        "nonnegative": u.is_nonnegative(),
        "recurrent_representative": rep.to_string(),
        "class": class,
    }))
}

fn is_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| matches!(c, 'U' | 'H' | 'D'))
}

fn item_stats(line: &str, n: Option<usize>, d: Option<usize>) -> Result<Value, CliError> {
    let line = line.trim();
    if line.starts_with('{') || line.starts_with('"') {
        let v: Value = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
        return json_stats(v, n, d);
    }
    if is_word(line) {
        return word_stats(&line.parse()?);
    }
    let c: Configuration = line.parse()?;
    config_stats(shape_of(n, d, &c)?, &c)
}

fn json_stats(v: Value, n: Option<usize>, d: Option<usize>) -> Result<Value, CliError> {
    let parse_err = |e: serde_json::Error| CliError::Domain(Error::Parse(e.to_string()));
    match &v {
        Value::String(s) => item_stats(s, n, d),
        Value::Object(o) if o.contains_key("upper") => {
            let p: SawtoothPolyomino = serde_json::from_value(v).map_err(parse_err)?;
            let w = SchroderWord::new(word_of(&p)?)?;
            let c = phi(&w);
            config_stats(shape_of(Some(p.n), Some(p.d), &c)?, &c)
        }
        Value::Object(o) if o.contains_key("extended") => {
            let ext: ExtendedConfiguration = o["extended"]
                .as_str()
                .ok_or_else(|| Error::Parse("'extended' must be a string".into()))?
                .parse()?;
            let shape = SplitGraphShape::new(ext.clique.len(), ext.independent.len())?;
            extended_stats(shape, &ext)
        }
        Value::Object(o) if o.contains_key("clique") => {
            let c: Configuration = serde_json::from_value(v).map_err(parse_err)?;
            config_stats(shape_of(n, d, &c)?, &c)
        }
        Value::Object(o) if o.contains_key("a") && o.contains_key("b") => {
            let s: ItcSequence = serde_json::from_value(v).map_err(parse_err)?;
            sequence_stats(&s)
        }
        _ => Err(Error::Parse(format!("unrecognized input {v}")).into()),
    }
}

pub fn stats(a: &StatsArgs, out: &mut impl Write) -> CliResult {
    if let Some(w) = &a.word {
        let v = word_stats(&w.parse()?)?;
        writeln!(out, "{v}")?;
        return Ok(());
    }
    match a.input.as_deref() {
        Some("-") => {
            for line in std::io::stdin().lock().lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                writeln!(out, "{}", item_stats(&line, a.n, a.d)?)?;
            }
            Ok(())
        }
        Some(s) => {
            writeln!(out, "{}", item_stats(s, a.n, a.d)?)?;
            Ok(())
        }
        None => Err(CliError::Usage(
            "give a configuration, '-' or --word".into(),
        )),
    }
}

fn method_poly(m: Method, shape: SplitGraphShape) -> Result<QtPolynomial, Error> {
    let ex = exec();
    match m {
        Method::Cti => f_cti_with(shape, ex),
        Method::Itc => f_itc_with(shape, ex),
        Method::Schroder | Method::All => qt_schroder_with(shape.n, shape.d, ex),
        Method::Egge => egge_sum_with(shape.n, shape.d, ex),
        Method::ItcSum => itc_sum_with(shape.n, shape.d, ex),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Cti => "cti",
        Method::Itc => "itc",
        Method::Schroder => "schroder",
        Method::Egge => "egge",
        Method::ItcSum => "itc-sum",
        Method::All => "all",
    }
}

fn write_poly(p: &QtPolynomial, f: PolyFormat, out: &mut impl Write) -> CliResult {
    match f {
        PolyFormat::Json => writeln!(out, "{}", p.to_json())?,
        PolyFormat::Latex => writeln!(out, "{}", p.to_latex())?,
    }
    Ok(())
}

pub fn poly(a: &PolyArgs, out: &mut impl Write) -> CliResult {
    let shape = SplitGraphShape::new(a.n, a.d)?;
    if a.method != Method::All {
        return write_poly(&method_poly(a.method, shape)?, a.format, out);
    }
    let methods = [
        Method::Cti,
        Method::Itc,
        Method::Schroder,
        Method::Egge,
        Method::ItcSum,
    ];
    let polys = methods
        .iter()
        .map(|&m| method_poly(m, shape))
        .collect::<Result<Vec<_>, _>>()?;
    let reference = &polys[2];
    let differing: Vec<Value> = methods
        .iter()
        .zip(&polys)
        .filter(|(_, p)| *p != reference)
        .map(|(&m, p)| json!({ "method": method_name(m), "poly": p.to_json() }))
        .collect();
    if !differing.is_empty() {
        let cert =
            json!({ "n": a.n, "d": a.d, "schroder": reference.to_json(), "differing": differing });
        writeln!(out, "{cert}")?;
        return Err(CliError::Mismatch(format!(
            "{} of 5 methods differ from qt_schroder",
            differing.len()
        )));
    }
    writeln!(out, "5 methods agree")?;
    write_poly(reference, a.format, out)
}

pub fn verify(a: &VerifyArgs, out: &mut impl Write) -> CliResult {
    let suite: Suite = a
        .suite
        .parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))?;
    if a.max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let reports = run_suite(suite, Range::new(a.max_n, a.max_d), exec());
    for r in &reports {
        match a.format {
            ReportFormat::Text => writeln!(out, "{}", r.line())?,
            ReportFormat::Json => writeln!(out, "{}", serde_json::to_string(r).expect("json"))?,
        }
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    if let Some(r) = failed.iter().find(|r| r.kind == CheckKind::Theorem) {
        return Err(CliError::Mismatch(format!(
            "{} checks failed, first: {}",
            failed.len(),
            r.name
        )));
    }
    if let Some(r) = failed.first() {
        return Err(CliError::Conjecture(format!("{} failed", r.name)));
    }
    writeln!(out, "{} checks passed", reports.len())?;
    Ok(())
}

fn modes(overlays: &[Overlay]) -> Vec<Mode> {
    overlays
        .iter()
        .map(|o| match o {
            Overlay::Cti => Mode::Cti,
            Overlay::Itc => Mode::Itc,
        })
        .collect()
}

fn emit(svg: &str, output: Option<&std::path::Path>, out: &mut impl Write) -> CliResult {
    match output {
        Some(p) => std::fs::write(p, svg)?,
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(())
}

pub fn render(target: RenderTarget, out: &mut impl Write) -> CliResult {
    let usage = |e: Error| CliError::Usage(e.to_string());
    match target {
        RenderTarget::Polyomino {
            config,
            n,
            d,
            overlay,
            output,
        } => {
            let c: Configuration = config.parse().map_err(usage)?;
            let shape = shape_of(n, d, &c)?;
            check_sorted_recurrent(shape, &c)?;
            let svg = render_polyomino_svg(&from_config(shape, &c)?, &modes(&overlay))?;
            emit(&svg, output.as_deref(), out)
        }
        RenderTarget::Path {
            word,
            peaks,
            bounce,
            output,
        } => {
            let w: SchroderWord = word.parse().map_err(usage)?;
            emit(&render_path_svg(&w, peaks, bounce), output.as_deref(), out)
        }
        RenderTarget::Batch {
            n,
            d,
            overlay,
            out_dir,
        } => {
            let shape = SplitGraphShape::new(n, d)?;
            std::fs::create_dir_all(&out_dir)?;
            let configs =
                enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec());
            let overlays = modes(&overlay);
            let svgs = exec().map(&configs, |c| {
                from_config(shape, c).and_then(|p| render_polyomino_svg(&p, &overlays))
            });
            for (i, (c, svg)) in configs.iter().zip(svgs).enumerate() {
                let path = out_dir.join(format!("polyomino-{i:04}.svg"));
                std::fs::write(&path, svg?)?;
                writeln!(out, "{}\t{c}", path.display())?;
            }
            Ok(())
        }
    }
}
