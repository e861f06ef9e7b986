//! Writers for the two interchange formats: CSV tables with `#key=value`
//! provenance headers for anything plottable, JSON for structured
//! reports. Identical configuration and seed produce byte-identical
//! files; floats are printed in shortest round-trip form.

use nnsd::analysis::Histogram;
use nnsd::ensemble::SpacingSampleSet;
use nnsd::transition::PdfTable;
use serde::Serialize;
use std::io::Write;

/// Provenance stamped into every output file.
pub struct RunMeta {
    pub command: String,
    pub version: &'static str,
}

pub fn write_pdf_csv(w: &mut dyn Write, table: &PdfTable, meta: &RunMeta) -> std::io::Result<()> {
    writeln!(w, "# command={}", meta.command)?;
    writeln!(w, "# version={}", meta.version)?;
    writeln!(w, "# kind={}", table.family.name())?;
    if let Some(alpha) = table.alpha {
        writeln!(w, "# alpha={alpha}")?;
    }
    writeln!(w, "# scale={}", table.scale)?;
    if let Some(mode) = table.z_mode {
        writeln!(w, "# z_mode={mode}")?;
    }
    writeln!(w, "# renormalized={}", table.renormalized)?;
    writeln!(w, "# mean_s={}", table.mean_s)?;
    writeln!(w, "x,density")?;
    for &(x, density) in &table.rows {
        writeln!(w, "{x},{density}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PdfJson<'a> {
    command: &'a str,
    version: &'a str,
    #[serde(flatten)]
    table: &'a PdfTable,
}

pub fn write_pdf_json(w: &mut dyn Write, table: &PdfTable, meta: &RunMeta) -> std::io::Result<()> {
    let doc = PdfJson { command: &meta.command, version: meta.version, table };
    write_json(w, &doc)
}

pub fn write_samples_csv(
    w: &mut dyn Write,
    set: &SpacingSampleSet,
    meta: &RunMeta,
) -> std::io::Result<()> {
    writeln!(w, "# command={}", meta.command)?;
    writeln!(w, "# version={}", meta.version)?;
    writeln!(w, "# alpha_vec={}", set.alpha)?;
    writeln!(w, "# n={}", set.count())?;
    writeln!(w, "# seed={}", set.seed)?;
    writeln!(w, "# method={}", set.method)?;
    for s in &set.spacings {
        writeln!(w, "{s}")?;
    }
    Ok(())
}

pub fn write_histogram_csv(
    w: &mut dyn Write,
    hist: &Histogram,
    meta: &RunMeta,
) -> std::io::Result<()> {
    writeln!(w, "# command={}", meta.command)?;
    writeln!(w, "# version={}", meta.version)?;
    writeln!(w, "# n_in_range={}", hist.n_in_range())?;
    writeln!(w, "# n_below={}", hist.n_below)?;
    writeln!(w, "# n_above={}", hist.n_above)?;
    writeln!(w, "bin_center,count,density")?;
    for (i, (&count, &density)) in hist.counts.iter().zip(&hist.density).enumerate() {
        let center = 0.5 * (hist.edges[i] + hist.edges[i + 1]);
        writeln!(w, "{center},{count},{density}")?;
    }
    Ok(())
}

pub fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
    writeln!(w, "{text}")
}
