//! Graph and weighting inputs.

use std::path::PathBuf;

use clap::Args;
use matchpoly::graph::{make_family, parse_edge_list, Family, Graph};
use matchpoly::{Error, Result};

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Wheel W_N: rim 0..N-2 in cyclic order, centre N-1.
    #[arg(long, value_name = "N")]
    wheel: Option<usize>,
    /// Cycle C_N on 0..N-1.
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    /// Path on N vertices.
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// Complete multipartite graph with the given part sizes.
    #[arg(long, value_name = "R1,R2,...", value_delimiter = ',')]
    complete_multipartite: Option<Vec<usize>>,
    /// The 5-cycle with chords {1,3} and {2,4}.
    #[arg(long)]
    chortling_c5: bool,
    /// The 5-cycle with the chord {1,4}.
    #[arg(long)]
    chorded_c5: bool,
    /// Edge list file: one `u v` pair per line, optional `vertices N` first.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl GraphSource {
    fn family(&self) -> Option<Family> {
        if let Some(n) = self.wheel {
            Some(Family::Wheel(n))
        } else if let Some(n) = self.cycle {
            Some(Family::Cycle(n))
        } else if let Some(n) = self.path {
            Some(Family::Path(n))
        } else if let Some(parts) = &self.complete_multipartite {
            Some(Family::CompleteMultipartite(parts.clone()))
        } else if self.chortling_c5 {
            Some(Family::ChortlingC5)
        } else if self.chorded_c5 {
            Some(Family::ChordedC5)
        } else {
            None
        }
    }

    /// The graph and a display name: the family name or the file path.
    pub fn load(&self) -> Result<(Graph, String)> {
        if let Some(family) = self.family() {
            return Ok((make_family(&family)?, family.to_string()));
        }
        let path = self.file.as_ref().expect("clap requires one source");
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Ok((parse_edge_list(&text)?, path.display().to_string()))
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WeightSource {
    /// Edge weights in canonical edge order, comma separated.
    #[arg(long, value_name = "W1,W2,...", value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    /// Weights file: either integers in canonical edge order, or one
    /// `u v w` line per weighted edge (unlisted edges get 0).
    #[arg(long, value_name = "PATH")]
    weights_file: Option<PathBuf>,
}

impl WeightSource {
    pub fn load(&self, g: &Graph) -> Result<Vec<u32>> {
        let x = match (&self.weights, &self.weights_file) {
            (Some(w), _) => w.clone(),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
                parse_weights(g, &text)?
            }
            (None, None) => unreachable!("clap requires one weight source"),
        };
        if x.len() != g.edge_count() {
            return Err(Error::Input(format!(
                "expected {} weights, one per edge, got {}",
                g.edge_count(),
                x.len()
            )));
        }
        Ok(x)
    }
}

fn parse_weights(g: &Graph, text: &str) -> Result<Vec<u32>> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let number = |s: &str| -> Result<usize> { s.parse().map_err(|_| Error::Input(format!("bad number {s:?}"))) };
    let triples = !lines.is_empty() && lines.iter().all(|l| l.split_whitespace().count() == 3);
    if !triples {
        return lines
            .iter()
            .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
            .filter(|s| !s.is_empty())
            .map(|s| number(s).map(|w| w as u32))
            .collect();
    }
    let mut x = vec![0; g.edge_count()];
    for line in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let (u, v, w) = (number(f[0])?, number(f[1])?, number(f[2])?);
        let e = g
            .edge_index(u, v)
            .ok_or_else(|| Error::Input(format!("{{{u}, {v}}} is not an edge")))?;
        x[e] = w as u32;
    }
    Ok(x)
}
