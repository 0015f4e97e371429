//! Independent oracles and helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use uireuse::harness::SyntheticCorpusSpec;
use uireuse::{CanonicalMap, FidelityClass, GuiEvent, GuiMap};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub const FIXTURES: [&str; 2] = ["signin", "news-mini"];

/// Plain recursive edit distance, no tables.
pub fn lev_naive<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => {
            if x == y {
                lev_naive(ra, rb)
            } else {
                1 + lev_naive(ra, b).min(lev_naive(a, rb)).min(lev_naive(ra, rb))
            }
        }
    }
}

/// Case table over (mapped?, same label?, label exists in target?), with
/// existence decided by scanning every target locator.
pub fn classify_oracle(src: &[GuiEvent], map: &GuiMap, src_can: &CanonicalMap, tgt_can: &CanonicalMap) -> Vec<FidelityClass> {
    let all_target: Vec<(&str, &str)> = tgt_can.iter().map(|(l, c)| (l, c.as_str())).collect();
    src.iter()
        .zip(&map.pairs)
        .map(|(s, pair)| {
            let label = src_can.get(s.locator()).expect("source labelled").as_str();
            let exists = all_target.iter().any(|(_, c)| *c == label);
            let same = pair.trans.as_ref().map(|t| {
                all_target
                    .iter()
                    .any(|(l, c)| *l == t.locator() && *c == label)
            });
            match (same, exists) {
                (Some(true), _) => FidelityClass::Correct,
                (Some(false), _) => FidelityClass::Incorrect,
                (None, true) => FidelityClass::Missed,
                (None, false) => FidelityClass::NonExist,
            }
        })
        .collect()
}

/// Textbook one-pass formula, a different computation from the library's.
pub fn pearson_oracle(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let syy: f64 = ys.iter().map(|y| y * y).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let den = ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt();
    if xs.len() < 2 || den == 0.0 {
        None
    } else {
        Some((n * sxy - sx * sy) / den)
    }
}

/// Edit distances between all words of length <= `max_len` over `k` letters,
/// filled by the plain recursion on first letters. Suffixes of enumerated words
/// are enumerated words too, so each recursive case reads earlier results.
pub struct LevTable {
    pub words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    dist: Vec<u8>,
}

impl LevTable {
    pub fn new(k: u8, max_len: usize) -> Self {
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut start = 0;
        for _ in 0..max_len {
            let end = words.len();
            for w in start..end {
                for c in 0..k {
                    let mut v = words[w].clone();
                    v.push(c);
                    words.push(v);
                }
            }
            start = end;
        }
        let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = words.len();
        let mut t = LevTable {
            words,
            index,
            dist: vec![u8::MAX; n * n],
        };
        let tail: Vec<usize> = (0..n)
            .map(|i| if t.words[i].is_empty() { 0 } else { t.index[&t.words[i][1..]] })
            .collect();
        // Words are generated shortest first, so suffix entries are ready.
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&t.words[i], &t.words[j]);
                let d = if a.is_empty() {
                    b.len()
                } else if b.is_empty() {
                    a.len()
                } else if a[0] == b[0] {
                    t.dist[tail[i] * n + tail[j]] as usize
                } else {
                    let del = t.dist[tail[i] * n + j] as usize;
                    let ins = t.dist[i * n + tail[j]] as usize;
                    let sub = t.dist[tail[i] * n + tail[j]] as usize;
                    1 + del.min(ins).min(sub)
                };
                t.dist[i * n + j] = d as u8;
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.dist[i * self.words.len() + j] as usize
    }
}

pub fn small_spec(seed: u64, prefix: &str) -> SyntheticCorpusSpec {
    SyntheticCorpusSpec {
        n_apps: 4,
        activities_per_app: 3,
        events_per_activity: 4,
        n_canonical: 10,
        tests_per_app: 3,
        test_length_range: [2, 6],
        canonical_coverage: 0.7,
        seed,
        app_prefix: prefix.to_string(),
        test_dropout: 0.0,
    }
}
