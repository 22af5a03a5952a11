use std::fs;
use std::io::{self, Read};

use spexgraph::extremal::{graph6_decode, graph6_encode};
use spexgraph::{construct_named, Error, Graph, Result};

use crate::{GraphSpec, InputArgs};

pub fn named_graph(spec: &GraphSpec) -> Result<Graph> {
    let family = spec
        .family
        .ok_or_else(|| Error::Parameter("give --family or --g6".into()))?;
    let params = family
        .params()
        .iter()
        .map(|&p| {
            let value = match p {
                "n" => spec.n,
                "k" => spec.k,
                "a" => spec.a,
                "b" => spec.b,
                "r" => spec.r,
                _ => None,
            };
            value.ok_or_else(|| Error::Parameter(format!("family {family} needs --{p}")))
        })
        .collect::<Result<Vec<_>>>()?;
    construct_named(family, &params)
}

pub fn read_text(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Error::Parameter(format!("cannot read '{path}': {e}")))?;
    }
    Ok(text)
}

/// Decodes graph6 lines; the error names the record and the offending line.
pub fn decode_lines(text: &str) -> impl Iterator<Item = Result<Graph>> + '_ {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(index, line)| {
            graph6_decode(line).map_err(|e| Error::Data {
                index,
                message: format!("{e} in '{}'", line.trim()),
            })
        })
}

/// Input graphs with their graph6 ids, from --g6 or a named family.
pub fn graphs(input: &InputArgs) -> Result<Vec<(String, Graph)>> {
    let graphs = match &input.g6 {
        Some(path) => {
            if input.graph.family.is_some() {
                return Err(Error::Parameter("--g6 and --family are exclusive".into()));
            }
            decode_lines(&read_text(path)?).collect::<Result<Vec<_>>>()?
        }
        None => vec![named_graph(&input.graph)?],
    };
    graphs
        .into_iter()
        .map(|g| Ok((graph6_encode(&g)?, g)))
        .collect()
}
