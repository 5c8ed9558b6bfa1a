//! Reference data for the published-value checks. Compiled in from `crates/core/data`,
//! or read from a directory given on the command line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use orbicover::numerics::Weight;

const FILES: [(&str, &str); 4] = [
    ("cuspidal_table.csv", include_str!("../../core/data/cuspidal_table.csv")),
    ("prop4_sets.txt", include_str!("../../core/data/prop4_sets.txt")),
    ("group_orders.csv", include_str!("../../core/data/group_orders.csv")),
    ("k3_degrees.csv", include_str!("../../core/data/k3_degrees.csv")),
];

#[derive(Debug, Clone, Default)]
pub struct Golden {
    dir: Option<PathBuf>,
}

pub struct OrderRow {
    pub case: String,
    pub builder: String,
    pub params: Vec<Weight>,
    pub order: usize,
}

pub struct K3Row {
    pub name: String,
    pub weights: Vec<Weight>,
    pub degree: u64,
}

fn weights(s: &str) -> Result<Vec<Weight>, String> {
    s.split_whitespace().map(|w| w.parse::<Weight>().map_err(|e| e.to_string())).collect()
}

impl Golden {
    pub fn new(dir: Option<&Path>) -> Self {
        Golden { dir: dir.map(Path::to_path_buf) }
    }

    fn text(&self, name: &str) -> Result<String, String> {
        match &self.dir {
            Some(d) => {
                let p = d.join(name);
                std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))
            }
            None => Ok(FILES.iter().find(|(n, _)| *n == name).expect("known data file").1.to_string()),
        }
    }

    fn csv(&self, name: &str) -> Result<Vec<Vec<String>>, String> {
        let text = self.text(name)?;
        let mut r = csv::Reader::from_reader(text.as_bytes());
        r.records()
            .map(|rec| rec.map(|r| r.iter().map(String::from).collect()).map_err(|e| format!("{name}: {e}")))
            .collect()
    }

    /// `(row, d, kappa, nu, b, g)`
    pub fn cuspidal_table(&self) -> Result<Vec<[u64; 6]>, String> {
        self.csv("cuspidal_table.csv")?
            .iter()
            .map(|r| {
                let v: Vec<u64> = r.iter().map(|x| x.parse()).collect::<Result<_, _>>().map_err(|e| format!("cuspidal_table.csv: {e}"))?;
                v.try_into().map_err(|_| "cuspidal_table.csv: expected 6 fields".to_string())
            })
            .collect()
    }

    pub fn prop4_sets(&self) -> Result<BTreeMap<String, Vec<String>>, String> {
        Ok(self
            .text("prop4_sets.txt")?
            .lines()
            .filter(|l| !l.starts_with('#') && l.contains(':'))
            .map(|l| {
                let (k, v) = l.split_once(':').expect("filtered on ':'");
                (k.trim().to_string(), v.split_whitespace().map(String::from).collect())
            })
            .collect())
    }

    pub fn group_orders(&self) -> Result<Vec<OrderRow>, String> {
        self.csv("group_orders.csv")?
            .into_iter()
            .map(|r| {
                Ok(OrderRow {
                    case: r[0].clone(),
                    builder: r[1].clone(),
                    params: weights(&r[2])?,
                    order: r[3].parse().map_err(|e| format!("group_orders.csv: {e}"))?,
                })
            })
            .collect()
    }

    pub fn k3_rows(&self) -> Result<Vec<K3Row>, String> {
        self.csv("k3_degrees.csv")?
            .into_iter()
            .map(|r| {
                Ok(K3Row {
                    name: r[0].clone(),
                    weights: weights(&r[1])?,
                    degree: r[4].parse().map_err(|e| format!("k3_degrees.csv: {e}"))?,
                })
            })
            .collect()
    }
}
