use std::fs;
use std::path::PathBuf;

use clap::Args;
use qsym_core::graph::{
    complement, complete, complete_bipartite, cycle, empty, hoffman_singleton, kneser, petersen,
    Graph, GraphError,
};

use crate::Failure;

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Builtin graph: petersen, c5, k4, empty4, k33, petersen-complement,
    /// hoffman-singleton, cycle-N, complete-N, empty-N, kneser-M-S, bipartite-A-B
    #[arg(long, value_name = "NAME")]
    graph: Option<String>,
    /// Graph in the edge-list text format
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

fn numbers(rest: &str) -> Option<Vec<usize>> {
    rest.split('-').map(|s| s.parse().ok()).collect()
}

pub fn builtin(name: &str) -> Result<Option<Graph>, GraphError> {
    let g = match name {
        "petersen" => petersen(),
        "c5" => cycle(5)?,
        "k4" => complete(4)?,
        "empty4" => empty(4)?,
        "k33" => complete_bipartite(3, 3)?,
        "petersen-complement" => complement(&petersen()),
        "hoffman-singleton" => hoffman_singleton(),
        _ => {
            let Some((family, rest)) = name.split_once('-') else {
                return Ok(None);
            };
            let Some(args) = numbers(rest) else {
                return Ok(None);
            };
            match (family, args.as_slice()) {
                ("cycle", [n]) => cycle(*n)?,
                ("complete", [n]) => complete(*n)?,
                ("empty", [n]) => empty(*n)?,
                ("kneser", [m, s]) => kneser(*m, *s)?,
                ("bipartite", [a, b]) => complete_bipartite(*a, *b)?,
                _ => return Ok(None),
            }
        }
    };
    Ok(Some(g))
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph, Failure> {
        match (&self.graph, &self.file) {
            (Some(name), _) => match builtin(name) {
                Ok(Some(g)) => Ok(g),
                Ok(None) => Err(Failure::usage(format!("unknown graph '{name}'"))),
                Err(e) => Err(Failure::usage(format!("graph '{name}': {e}"))),
            },
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
                Graph::from_text(&text)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
            }
            (None, None) => Err(Failure::usage("no graph given")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(builtin("petersen").unwrap().unwrap().n(), 10);
        assert_eq!(builtin("cycle-7").unwrap().unwrap().edge_count(), 7);
        assert_eq!(builtin("kneser-5-2").unwrap().unwrap(), petersen());
        assert_eq!(builtin("bipartite-2-3").unwrap().unwrap().edge_count(), 6);
        assert_eq!(builtin("hoffman-singleton").unwrap().unwrap().n(), 50);
        assert!(builtin("nope").unwrap().is_none());
        assert!(builtin("cycle-x").unwrap().is_none());
        assert!(builtin("cycle-2").is_err());
    }
}
