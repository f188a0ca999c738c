//! The JSON frame document: a finite order (by `leq_pairs` or a `meet`
//! table), an optional relation `R` and an optional valuation.

use std::collections::BTreeMap;

use ndpl_core::order::OrderError;
use ndpl_core::semantics::{ModalLFrame, Relation, SemanticsError};
use ndpl_core::{BoundedLattice, MeetSemilattice, Poset, Subset};
use serde::{Deserialize, Serialize};

pub const VERSION: &str = "ndpl-frame/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDocument {
    pub version: String,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq_pairs: Option<Vec<(String, String)>>,
    /// `meet[i][j]` is the meet of `elements[i]` and `elements[j]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<String>>>,
    #[serde(default, rename = "R", skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

/// A loading failure with the document path where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{at}: {message}")]
pub struct DocError {
    pub at: String,
    pub message: String,
}

fn err(at: impl Into<String>, message: impl std::fmt::Display) -> DocError {
    DocError {
        at: at.into(),
        message: message.to_string(),
    }
}

impl FrameDocument {
    pub fn parse(text: &str) -> Result<FrameDocument, DocError> {
        let doc: FrameDocument = serde_json::from_str(text).map_err(|e| err(format!("line {} column {}", e.line(), e.column()), e))?;
        if doc.version != VERSION {
            return Err(err("version", format!("expected `{VERSION}`, found `{}`", doc.version)));
        }
        Ok(doc)
    }

    fn index(&self, at: &str, label: &str) -> Result<usize, DocError> {
        self.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| err(at, format!("unknown element `{label}`")))
    }

    pub fn poset(&self) -> Result<Poset, DocError> {
        for (i, l) in self.elements.iter().enumerate() {
            if self.elements[..i].contains(l) {
                return Err(err(format!("elements[{i}]"), format!("duplicate element `{l}`")));
            }
        }
        match (&self.leq_pairs, &self.meet) {
            (Some(pairs), None) => {
                let mut idx = Vec::with_capacity(pairs.len());
                for (k, (a, b)) in pairs.iter().enumerate() {
                    idx.push((self.index(&format!("leq_pairs[{k}][0]"), a)?, self.index(&format!("leq_pairs[{k}][1]"), b)?));
                }
                Poset::from_index_pairs(self.elements.clone(), &idx).map_err(|e| err("leq_pairs", e))
            }
            (None, Some(table)) => {
                let n = self.elements.len();
                if table.len() != n {
                    return Err(err("meet", format!("expected {n} rows, found {}", table.len())));
                }
                let mut m = vec![vec![0; n]; n];
                for (i, row) in table.iter().enumerate() {
                    if row.len() != n {
                        return Err(err(format!("meet[{i}]"), format!("expected {n} entries, found {}", row.len())));
                    }
                    for (j, cell) in row.iter().enumerate() {
                        m[i][j] = self.index(&format!("meet[{i}][{j}]"), cell)?;
                    }
                }
                let poset = Poset::from_relation(self.elements.clone(), |i, j| m[i][j] == i).map_err(|e| err("meet", e))?;
                let sl = MeetSemilattice::new(poset.clone()).map_err(|e| err("meet", e))?;
                for i in 0..n {
                    for j in 0..n {
                        if sl.meet(i, j) != m[i][j] {
                            return Err(err(format!("meet[{i}][{j}]"), "table is not the meet of the order it induces"));
                        }
                    }
                }
                Ok(poset)
            }
            (Some(_), Some(_)) => Err(err("leq_pairs", "give either `leq_pairs` or `meet`, not both")),
            (None, None) => Err(err("elements", "missing order: give `leq_pairs` or `meet`")),
        }
    }

    pub fn semilattice(&self) -> Result<MeetSemilattice, DocError> {
        MeetSemilattice::new(self.poset()?).map_err(|e| err("order", e))
    }

    pub fn lattice(&self) -> Result<BoundedLattice, DocError> {
        BoundedLattice::new(self.poset()?).map_err(|e| err("order", e))
    }

    pub fn relation(&self) -> Result<Option<Relation>, DocError> {
        let Some(pairs) = &self.relation else { return Ok(None) };
        let mut idx = Vec::with_capacity(pairs.len());
        for (k, (a, b)) in pairs.iter().enumerate() {
            idx.push((self.index(&format!("R[{k}][0]"), a)?, self.index(&format!("R[{k}][1]"), b)?));
        }
        Ok(Some(Relation::from_pairs(self.elements.len(), &idx)))
    }

    /// The modal frame, built without rejecting condition failures.
    pub fn modal_frame_unchecked(&self) -> Result<Option<ModalLFrame>, DocError> {
        let sl = self.semilattice()?;
        Ok(self.relation()?.map(|r| ModalLFrame::new_unchecked(sl, r)))
    }

    pub fn modal_frame(&self) -> Result<Option<ModalLFrame>, DocError> {
        let sl = self.semilattice()?;
        match self.relation()? {
            None => Ok(None),
            Some(r) => ModalLFrame::new(sl, r).map(Some).map_err(|e| err("R", e)),
        }
    }

    /// The valuation as subsets; each must be a filter of the order.
    pub fn valuation_sets(&self, sl: &MeetSemilattice) -> Result<BTreeMap<String, Subset>, DocError> {
        let mut out = BTreeMap::new();
        for (p, labels) in self.valuation.iter().flatten() {
            let mut s = Subset::EMPTY;
            for (k, l) in labels.iter().enumerate() {
                s = s.with(self.index(&format!("valuation.{p}[{k}]"), l)?);
            }
            if !sl.is_filter(s) {
                return Err(err(format!("valuation.{p}"), format!("{} is not a filter", sl.poset().subset_label(s))));
            }
            out.insert(p.clone(), s);
        }
        Ok(out)
    }

    /// Covering pairs of the order.
    pub fn from_poset(p: &Poset) -> FrameDocument {
        let n = p.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let covers = i != j && p.leq(i, j) && !(0..n).any(|k| k != i && k != j && p.leq(i, k) && p.leq(k, j));
                if covers {
                    pairs.push((p.label(i).to_string(), p.label(j).to_string()));
                }
            }
        }
        FrameDocument {
            version: VERSION.to_string(),
            elements: p.labels().to_vec(),
            leq_pairs: Some(pairs),
            meet: None,
            relation: None,
            valuation: None,
        }
    }

    pub fn from_modal(f: &ModalLFrame) -> FrameDocument {
        let p = f.semilattice().poset();
        let mut doc = FrameDocument::from_poset(p);
        doc.relation = Some(
            f.relation()
                .pairs()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
        );
        doc
    }

    pub fn with_valuation(mut self, p: &Poset, v: &BTreeMap<String, Subset>) -> FrameDocument {
        self.valuation = Some(
            v.iter()
                .map(|(k, s)| (k.clone(), s.iter().map(|i| p.label(i).to_string()).collect()))
                .collect(),
        );
        self
    }
}

impl From<OrderError> for DocError {
    fn from(e: OrderError) -> DocError {
        err("order", e)
    }
}

impl From<SemanticsError> for DocError {
    fn from(e: SemanticsError) -> DocError {
        err("frame", e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M3: &str = r#"{
        "version": "ndpl-frame/1",
        "elements": ["0", "a", "b", "c", "1"],
        "leq_pairs": [["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]
    }"#;

    #[test]
    fn loads_by_pairs_and_by_table() {
        let doc = FrameDocument::parse(M3).unwrap();
        let sl = doc.semilattice().unwrap();
        assert_eq!(sl.meet(1, 2), 0);
        let table: Vec<Vec<String>> = (0..5)
            .map(|i| (0..5).map(|j| doc.elements[sl.meet(i, j)].clone()).collect())
            .collect();
        let by_table = FrameDocument {
            leq_pairs: None,
            meet: Some(table),
            ..doc.clone()
        };
        assert_eq!(by_table.poset().unwrap(), doc.poset().unwrap());
        let back = FrameDocument::from_poset(sl.poset());
        assert_eq!(back.poset().unwrap(), doc.poset().unwrap());
    }

    #[test]
    fn errors_are_located() {
        let bad = M3.replace(r#"["c","1"]"#, r#"["c","z"]"#);
        let e = FrameDocument::parse(&bad).unwrap().poset().unwrap_err();
        assert_eq!(e.at, "leq_pairs[5][1]");
        let bad = M3.replace("ndpl-frame/1", "v0");
        assert_eq!(FrameDocument::parse(&bad).unwrap_err().at, "version");
        let cyc = M3.replace(r#"["c","1"]"#, r#"["1","0"]"#);
        assert!(FrameDocument::parse(&cyc).unwrap().poset().is_err());
        let val = M3.replace("\"leq_pairs\"", "\"valuation\": {\"p\": [\"a\"]}, \"leq_pairs\"");
        let doc = FrameDocument::parse(&val).unwrap();
        let e = doc.valuation_sets(&doc.semilattice().unwrap()).unwrap_err();
        assert_eq!(e.at, "valuation.p");
    }

    #[test]
    fn meet_tables_must_match_their_order() {
        let doc = FrameDocument {
            version: VERSION.into(),
            elements: vec!["x".into(), "y".into()],
            leq_pairs: None,
            meet: Some(vec![vec!["x".into(), "x".into()], vec!["y".into(), "y".into()]]),
            relation: None,
            valuation: None,
        };
        assert!(doc.poset().is_err());
    }
}
