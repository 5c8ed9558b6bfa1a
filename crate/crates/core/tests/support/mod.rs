//! Golden data shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use orbicover::numerics::Weight;

pub fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn rat(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((p, q)) => BigRational::new(p.parse::<BigInt>().unwrap(), q.parse::<BigInt>().unwrap()),
        None => BigRational::from_integer(s.parse::<BigInt>().unwrap()),
    }
}

pub fn weight(s: &str) -> Weight {
    if s == "INF" {
        Weight::Inf
    } else {
        Weight::Fin(s.parse().unwrap())
    }
}

pub fn weights(s: &str) -> Vec<Weight> {
    s.split_whitespace().map(weight).collect()
}

/// Data rows of a CSV file with a header line.
pub fn csv(name: &str) -> Vec<Vec<String>> {
    let text = data(name);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect()
}

/// `(row, d, kappa, nu, b, g)` of the cuspidal table.
pub fn cuspidal_table() -> Vec<[u64; 6]> {
    csv("cuspidal_table.csv")
        .iter()
        .map(|r| {
            let v: Vec<u64> = r.iter().map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4], v[5]]
        })
        .collect()
}

/// Clause name to tuple strings, as listed.
pub fn prop4_sets() -> BTreeMap<String, Vec<String>> {
    data("prop4_sets.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && l.contains(':'))
        .map(|l| {
            let (k, v) = l.split_once(':').unwrap();
            (k.trim().to_string(), v.split_whitespace().map(String::from).collect())
        })
        .collect()
}

pub struct OrderRow {
    pub case: String,
    pub builder: String,
    pub params: Vec<Weight>,
    pub order: usize,
}

pub fn group_orders() -> Vec<OrderRow> {
    csv("group_orders.csv")
        .into_iter()
        .map(|r| OrderRow { case: r[0].clone(), builder: r[1].clone(), params: weights(&r[2]), order: r[3].parse().unwrap() })
        .collect()
}

pub struct K3Row {
    pub name: String,
    pub weights: Vec<Weight>,
    pub euler: BigRational,
    pub c1sq: BigRational,
    pub degree: u64,
}

pub fn k3_rows() -> Vec<K3Row> {
    csv("k3_degrees.csv")
        .into_iter()
        .map(|r| K3Row {
            name: r[0].clone(),
            weights: weights(&r[1]),
            euler: rat(&r[2]),
            c1sq: rat(&r[3]),
            degree: r[4].parse().unwrap(),
        })
        .collect()
}
