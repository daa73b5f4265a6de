//! CSV and JSON-lines exports.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use graphtopo_core::synth::SynthSample;
use graphtopo_core::wl::WlColoring;

use crate::edgelist::serialize_edge_list;
use crate::error::{IoError, Result};

/// `iteration,vertex,label`, one row per vertex and iteration.
pub fn coloring_csv(c: &WlColoring) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["iteration", "vertex", "label"])?;
    for t in 0..=c.depth() {
        for (v, label) in c.labels(t).iter().enumerate() {
            w.serialize((t, v, label))?;
        }
    }
    into_string(w)
}

/// `id,c0,c1,...`, one row per vertex or edge.
pub fn embedding_csv(rows: &[Vec<f64>]) -> Result<String> {
    let width = rows.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string()];
    header.extend((0..width).map(|i| format!("c{i}")));
    w.write_record(&header)?;
    for (id, row) in rows.iter().enumerate() {
        let mut rec = vec![id.to_string()];
        rec.extend(row.iter().map(|x| format!("{x:?}")));
        w.write_record(&rec)?;
    }
    into_string(w)
}

pub(crate) fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| IoError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetLayout {
    /// `<out>/<id>.txt` edge lists plus `<out>/labels.csv`.
    Directory,
    /// One JSON object per line in `<out>`.
    JsonLines,
}

#[derive(Serialize)]
struct SampleLine<'a> {
    id: usize,
    dataset: &'a str,
    seed: u64,
    label: u8,
    n: usize,
    edges: &'a [(usize, usize)],
    #[serde(skip_serializing_if = "Option::is_none")]
    attributes: Option<&'a [Vec<f64>]>,
}

pub fn sample_file_name(index: usize) -> String {
    format!("{index:05}.txt")
}

pub fn write_dataset(samples: &[SynthSample], out: &Path, layout: DatasetLayout) -> Result<()> {
    match layout {
        DatasetLayout::Directory => {
            fs::create_dir_all(out).map_err(|e| IoError::file(out, e))?;
            let mut labels = csv::Writer::from_writer(Vec::new());
            labels.write_record(["id", "label"])?;
            for s in samples {
                let path = out.join(sample_file_name(s.index));
                fs::write(&path, serialize_edge_list(&s.graph)).map_err(|e| IoError::file(&path, e))?;
                labels.serialize((s.index, s.label))?;
            }
            let path = out.join("labels.csv");
            fs::write(&path, into_string(labels)?).map_err(|e| IoError::file(&path, e))?;
        }
        DatasetLayout::JsonLines => {
            if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| IoError::file(parent, e))?;
            }
            let mut buf = Vec::new();
            for s in samples {
                let line = SampleLine {
                    id: s.index,
                    dataset: s.dataset.name(),
                    seed: s.seed,
                    label: s.label,
                    n: s.graph.n_vertices(),
                    edges: s.graph.edges(),
                    attributes: s.graph.attributes(),
                };
                serde_json::to_writer(&mut buf, &line)?;
                buf.push(b'\n');
            }
            let mut f = fs::File::create(out).map_err(|e| IoError::file(out, e))?;
            f.write_all(&buf).map_err(|e| IoError::file(out, e))?;
        }
    }
    Ok(())
}
