//! Framed links in S³ described by their linking data.
//!
//! A link enters either as a symmetric linking matrix or as a list of
//! signed crossings `(over, under, sign)`. Crossing signs follow the
//! right-hand rule. The linking number of two components is half the
//! signed count of crossings between them; the framing of a component is
//! the signed count of its self-crossings (blackboard framing).
//!
//! Text format, one record per line, `#` starts a comment:
//!
//! ```text
//! n 2          # optional component count
//! X 0 1 +
//! X 1 0 +
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclo, CycloRing};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingList {
    pub n: usize,
    pub crossings: Vec<Crossing>,
}

impl CrossingList {
    /// Checks indices and the parity of inter-component crossing counts.
    pub fn validate(&self) -> Result<()> {
        for (idx, c) in self.crossings.iter().enumerate() {
            if c.over >= self.n || c.under >= self.n {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!(
                        "component index out of range ({} components)",
                        self.n
                    ),
                });
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("crossing sign must be +1 or -1, got {}", c.sign),
                });
            }
        }
        let sums = self.pair_sums();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if sums[i][j] % 2 != 0 {
                    return Err(Error::Parity(i, j));
                }
            }
        }
        Ok(())
    }

    fn pair_sums(&self) -> Vec<Vec<i64>> {
        let mut s = vec![vec![0i64; self.n]; self.n];
        for c in &self.crossings {
            let v = c.sign as i64;
            if c.over == c.under {
                s[c.over][c.over] += v;
            } else {
                s[c.over][c.under] += v;
                s[c.under][c.over] += v;
            }
        }
        s
    }

    /// Linking numbers off the diagonal, writhes on it.
    pub fn linking_matrix(&self) -> Result<FramedLinkData> {
        self.validate()?;
        let s = self.pair_sums();
        let b = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { s[i][i] } else { s[i][j] / 2 })
                    .collect()
            })
            .collect();
        Ok(FramedLinkData { n: self.n, b })
    }

    /// All crossing signs reversed.
    pub fn mirror(&self) -> CrossingList {
        CrossingList {
            n: self.n,
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing { sign: -c.sign, ..*c })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for c in &self.crossings {
            let s = if c.sign > 0 { '+' } else { '-' };
            let _ = writeln!(out, "X {} {} {s}", c.over, c.under);
        }
        out
    }
}

/// Parses the line-oriented crossing format.
pub fn parse_link(text: &str) -> Result<CrossingList> {
    let mut n: Option<usize> = None;
    let mut crossings = Vec::new();
    let mut crossing_lines = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno + 1, msg };
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "n" | "N" => {
                if tok.len() != 2 || n.is_some() {
                    return Err(err("expected a single `n <count>` line".into()));
                }
                n = Some(tok[1].parse().map_err(|_| err(format!("bad count {:?}", tok[1])))?);
            }
            "X" | "x" => {
                if tok.len() != 4 {
                    return Err(err(format!("expected `X <over> <under> <+|->`, got {line:?}")));
                }
                let idx = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(format!("bad component index {s:?}")))
                };
                let sign = match tok[3] {
                    "+" | "+1" | "1" => 1,
                    "-" | "-1" => -1,
                    other => return Err(err(format!("bad crossing sign {other:?}"))),
                };
                crossings.push(Crossing {
                    over: idx(tok[1])?,
                    under: idx(tok[2])?,
                    sign,
                });
                crossing_lines.push(lineno + 1);
            }
            other => return Err(err(format!("unknown record {other:?}"))),
        }
    }
    let max = crossings
        .iter()
        .map(|c| c.over.max(c.under) + 1)
        .max()
        .unwrap_or(0);
    let n = n.unwrap_or(max);
    let list = CrossingList { n, crossings };
    list.validate().map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line: crossing_lines[line - 1],
            msg,
        },
        other => other,
    })?;
    Ok(list)
}

/// Component count and symmetric linking matrix (framings on the diagonal).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LinkJson")]
pub struct FramedLinkData {
    pub n: usize,
    #[serde(rename = "linking")]
    pub b: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LinkJson {
    Linking { n: usize, linking: Vec<Vec<i64>> },
    Crossings { n: usize, crossings: Vec<Crossing> },
}

impl TryFrom<LinkJson> for FramedLinkData {
    type Error = Error;

    fn try_from(raw: LinkJson) -> Result<Self> {
        match raw {
            LinkJson::Linking { n, linking } => {
                let d = FramedLinkData::new(linking)?;
                if d.n != n {
                    return Err(Error::Shape(format!("n = {n} but matrix has {} rows", d.n)));
                }
                Ok(d)
            }
            LinkJson::Crossings { n, crossings } => CrossingList { n, crossings }.linking_matrix(),
        }
    }
}

impl FramedLinkData {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        if let Some((i, row)) = b.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != b[j][i] {
                    return Err(Error::Shape(format!("linking matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(FramedLinkData { n, b })
    }

    pub fn empty() -> Self {
        FramedLinkData { n: 0, b: Vec::new() }
    }

    /// Unknot with framing `f`.
    pub fn unknot(f: i64) -> Self {
        FramedLinkData { n: 1, b: vec![vec![f]] }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: LinkJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    /// Reads JSON (either form) or the text crossing format.
    pub fn load(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            parse_link(text)?.linking_matrix()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// `t^{Σ_{i≠j} B_ij + Σ_i B_ii}`: the value of the link in the skein
    /// module of S³.
    pub fn skein_value_s3(&self, ring: &Arc<CycloRing>) -> Cyclo {
        let e: i64 = self.b.iter().flatten().sum();
        ring.t_pow(e)
    }

    /// Handle slide of component `i` over `j`: `B ↦ EᵀBE`, `E = I + ε e_j e_iᵀ`.
    pub fn kirby_slide(&self, i: usize, j: usize, eps: i64) -> Result<Self> {
        if i == j || i >= self.n || j >= self.n {
            return Err(Error::InvalidMove(format!(
                "slide {i} over {j} in a {}-component link",
                self.n
            )));
        }
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidMove(format!("slide sign {eps}")));
        }
        let mut b = self.b.clone();
        let bii = self.b[i][i] + 2 * eps * self.b[i][j] + self.b[j][j];
        for k in 0..self.n {
            if k != i {
                b[i][k] = self.b[i][k] + eps * self.b[j][k];
                b[k][i] = b[i][k];
            }
        }
        b[i][i] = bii;
        Ok(FramedLinkData { n: self.n, b })
    }

    /// Adds an unlinked unknot with framing `ε`.
    pub fn stabilize(&self, eps: i64) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidMove(format!("stabilization sign {eps}")));
        }
        let n = self.n + 1;
        let mut b = vec![vec![0i64; n]; n];
        for (i, row) in self.b.iter().enumerate() {
            b[i][..self.n].copy_from_slice(row);
        }
        b[n - 1][n - 1] = eps;
        Ok(FramedLinkData { n, b })
    }

    /// Removes component `i`, which must be an unlinked `±1`-framed unknot.
    pub fn destabilize(&self, i: usize) -> Result<Self> {
        if !self.can_destabilize(i) {
            return Err(Error::InvalidMove(format!(
                "component {i} is not an isolated ±1-framed component"
            )));
        }
        let b = self
            .b
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != i)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        Ok(FramedLinkData { n: self.n - 1, b })
    }

    pub fn can_destabilize(&self, i: usize) -> bool {
        i < self.n
            && self.b[i][i].abs() == 1
            && (0..self.n).all(|j| j == i || self.b[i][j] == 0)
    }

    /// Orientation reversal of the ambient space: `B ↦ −B`.
    pub fn mirror(&self) -> Self {
        FramedLinkData {
            n: self.n,
            b: self
                .b
                .iter()
                .map(|r| r.iter().map(|v| -v).collect())
                .collect(),
        }
    }

    /// Split union (block-diagonal sum).
    pub fn connected_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..self.n {
            b[i][..self.n].copy_from_slice(&self.b[i]);
        }
        for i in 0..other.n {
            b[self.n + i][self.n..].copy_from_slice(&other.b[i]);
        }
        FramedLinkData { n, b }
    }

    /// Reverses the orientation of component `i` (negates row and column).
    pub fn reverse_component(&self, i: usize) -> Self {
        let mut b = self.b.clone();
        for k in 0..self.n {
            if k != i {
                b[i][k] = -b[i][k];
                b[k][i] = -b[k][i];
            }
        }
        FramedLinkData { n: self.n, b }
    }

    pub fn apply(&self, mv: KirbyMove) -> Result<Self> {
        match mv {
            KirbyMove::Slide { i, j, eps } => self.kirby_slide(i, j, eps),
            KirbyMove::Stabilize { eps } => self.stabilize(eps),
            KirbyMove::Destabilize { i } => self.destabilize(i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KirbyMove {
    Slide { i: usize, j: usize, eps: i64 },
    Stabilize { eps: i64 },
    Destabilize { i: usize },
}

/// Default cap on the component count reached by a random walk.
pub const WALK_MAX_COMPONENTS: usize = 6;

/// A seeded random sequence of Kirby moves; the component count never
/// exceeds `max(d.n, WALK_MAX_COMPONENTS)`.
pub fn random_kirby_walk(d: &FramedLinkData, steps: usize, seed: u64) -> FramedLinkData {
    random_kirby_walk_with(d, steps, seed, WALK_MAX_COMPONENTS.max(d.n)).0
}

/// As [`random_kirby_walk`], with an explicit component cap; also returns
/// the moves taken.
pub fn random_kirby_walk_with(
    d: &FramedLinkData,
    steps: usize,
    seed: u64,
    max_n: usize,
) -> (FramedLinkData, Vec<KirbyMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut moves = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut options: Vec<u8> = Vec::new();
        if cur.n >= 2 {
            options.extend([0, 0, 0]);
        }
        if cur.n < max_n {
            options.push(1);
        }
        if (0..cur.n).any(|i| cur.can_destabilize(i)) {
            options.push(2);
        }
        let Some(&kind) = options.get(rng.gen_range(0..options.len().max(1))) else {
            break;
        };
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mv = match kind {
            0 => {
                let i = rng.gen_range(0..cur.n);
                let mut j = rng.gen_range(0..cur.n - 1);
                if j >= i {
                    j += 1;
                }
                KirbyMove::Slide { i, j, eps }
            }
            1 => KirbyMove::Stabilize { eps },
            _ => {
                let cands: Vec<usize> = (0..cur.n).filter(|&i| cur.can_destabilize(i)).collect();
                KirbyMove::Destabilize {
                    i: cands[rng.gen_range(0..cands.len())],
                }
            }
        };
        cur = cur.apply(mv).expect("walk only proposes valid moves");
        moves.push(mv);
    }
    (cur, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let l = parse_link("X 0 1 +\nX 1 0 +").unwrap();
        assert_eq!(l.n, 2);
        assert_eq!(l.crossings.len(), 2);
        let s = parse_link("X 0 0 -").unwrap();
        assert_eq!(s.crossings[0], Crossing { over: 0, under: 0, sign: -1 });
        assert!(matches!(parse_link("X 0 1 +"), Err(Error::Parity(0, 1))));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_link("# hopf\nX 0 1 +\nX 0 1 *\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_link("n 1\nX 0 0 +\nX 0 3 +\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_link("Y 0 1 +").is_err());
    }

    #[test]
    fn linking_matrices() {
        let hopf = parse_link("X 0 1 +\nX 1 0 +").unwrap().linking_matrix().unwrap();
        assert_eq!(hopf.b, vec![vec![0, 1], vec![1, 0]]);
        let curl = parse_link("X 0 0 +").unwrap().linking_matrix().unwrap();
        assert_eq!(curl.b, vec![vec![1]]);
        let empty = parse_link("n 1\n").unwrap().linking_matrix().unwrap();
        assert_eq!(empty.b, vec![vec![0]]);
    }

    #[test]
    fn skein_values() {
        let r = CycloRing::new(4).unwrap();
        let hopf = FramedLinkData::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(hopf.skein_value_s3(&r), r.t_pow(2));
        assert_eq!(FramedLinkData::unknot(1).skein_value_s3(&r), r.t_pow(1));
        assert!(FramedLinkData::empty().skein_value_s3(&r).is_one());
    }

    #[test]
    fn slides() {
        let hopf = FramedLinkData::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let s = hopf.kirby_slide(0, 1, 1).unwrap();
        assert_eq!(s.b, vec![vec![2, 1], vec![1, 0]]);
        let d = FramedLinkData::new(vec![vec![1, 2], vec![2, -1]]).unwrap();
        let s = d.kirby_slide(0, 1, 1).unwrap();
        assert_eq!(s.b, vec![vec![4, 1], vec![1, -1]]);
        assert_eq!(s.kirby_slide(0, 1, -1).unwrap(), d);
        assert!(d.kirby_slide(1, 1, 1).is_err());
    }

    #[test]
    fn stabilization() {
        let d = FramedLinkData::new(vec![vec![0]]).unwrap();
        let s = d.stabilize(1).unwrap();
        assert_eq!(s.b, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(s.destabilize(1).unwrap(), d);
        assert!(s.destabilize(0).is_err());
    }

    #[test]
    fn json_forms() {
        let d = FramedLinkData::from_json(r#"{"n": 2, "linking": [[0, 1], [1, 0]]}"#).unwrap();
        assert_eq!(d.b, vec![vec![0, 1], vec![1, 0]]);
        let c = FramedLinkData::from_json(
            r#"{"n": 2, "crossings": [{"over": 0, "under": 1, "sign": 1}, {"over": 1, "under": 0, "sign": 1}]}"#,
        )
        .unwrap();
        assert_eq!(c, d);
        assert_eq!(FramedLinkData::from_json(&d.to_json()).unwrap(), d);
        assert!(FramedLinkData::from_json(r#"{"n": 2, "linking": [[0, 1], [2, 0]]}"#).is_err());
    }

    #[test]
    fn walks_are_deterministic() {
        let d = FramedLinkData::new(vec![vec![1, 2], vec![2, 0]]).unwrap();
        assert_eq!(random_kirby_walk(&d, 0, 7), d);
        assert_eq!(random_kirby_walk(&d, 20, 7), random_kirby_walk(&d, 20, 7));
        let (w, moves) = random_kirby_walk_with(&d, 40, 3, 4);
        assert_eq!(moves.len(), 40);
        assert!(w.n <= 4);
    }

    fn arb_crossings() -> impl Strategy<Value = CrossingList> {
        (1usize..5)
            .prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n, prop_oneof![Just(1i8), Just(-1i8)]), 0..12)
                    .prop_map(move |v| {
                        // Doubling every inter-component crossing keeps parity even.
                        let mut crossings = Vec::new();
                        for (o, u, s) in v {
                            crossings.push(Crossing { over: o, under: u, sign: s });
                            if o != u {
                                crossings.push(Crossing { over: u, under: o, sign: s });
                            }
                        }
                        CrossingList { n, crossings }
                    })
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(list in arb_crossings()) {
            prop_assert_eq!(parse_link(&list.to_text()).unwrap(), list);
        }

        #[test]
        fn mirror_negates(list in arb_crossings()) {
            let b = list.linking_matrix().unwrap();
            prop_assert_eq!(list.mirror().linking_matrix().unwrap(), b.mirror());
        }
    }
}
