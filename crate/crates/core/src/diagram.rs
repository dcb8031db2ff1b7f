//! Oriented, component-labelled link diagrams.
//!
//! A crossing records its over-arc and the two under-arcs as seen from the
//! over-strand's orientation (`left`, `right`). Crossings left behind by
//! [`Diagram::delete_component`] where the deleted component passed over are
//! flagged `trivial` and carry no over-arc.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub id: String,
    pub component: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnderIn {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<String>,
    pub left: String,
    pub right: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub under_in: Option<UnderIn>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trivial: bool,
}

impl Crossing {
    pub fn new(id: &str, over: &str, left: &str, right: &str) -> Self {
        Crossing {
            id: id.into(),
            over: Some(over.into()),
            left: left.into(),
            right: right.into(),
            under_in: None,
            trivial: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagram {
    mu: usize,
    arcs: Vec<Arc>,
    crossings: Vec<Crossing>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

#[derive(Deserialize)]
struct RawDiagram {
    mu: usize,
    arcs: Vec<Arc>,
    #[serde(default)]
    crossings: Vec<Crossing>,
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(d)?;
        Diagram::new(raw.mu, raw.arcs, raw.crossings).map_err(serde::de::Error::custom)
    }
}

impl Diagram {
    /// Validates and builds a diagram.
    pub fn new(mu: usize, arcs: Vec<Arc>, crossings: Vec<Crossing>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, a) in arcs.iter().enumerate() {
            if a.component == 0 || a.component > mu {
                return Err(Error::ComponentOutOfRange { index: a.component, mu });
            }
            if index.insert(a.id.clone(), i).is_some() {
                return Err(Error::Diagram(format!("duplicate arc id {:?}", a.id)));
            }
        }
        for comp in 1..=mu {
            if !arcs.iter().any(|a| a.component == comp) {
                return Err(Error::EmptyComponent(comp));
            }
        }
        let mut seen = HashSet::new();
        for c in &crossings {
            if !seen.insert(c.id.as_str()) {
                return Err(Error::Diagram(format!("duplicate crossing id {:?}", c.id)));
            }
            let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownArc(id.to_string()));
            match (&c.over, c.trivial) {
                (Some(o), false) => {
                    lookup(o)?;
                }
                (None, true) => {}
                (Some(_), true) => {
                    return Err(Error::Diagram(format!("trivial crossing {:?} must not name an over-arc", c.id)))
                }
                (None, false) => return Err(Error::Diagram(format!("crossing {:?} has no over-arc", c.id))),
            }
            let l = lookup(&c.left)?;
            let r = lookup(&c.right)?;
            if l == r {
                return Err(Error::Diagram(format!("crossing {:?} has left = right", c.id)));
            }
            if arcs[l].component != arcs[r].component {
                return Err(Error::UnderComponentMismatch { crossing: c.id.clone() });
            }
        }
        Ok(Diagram { mu, arcs, crossings, index })
    }

    /// Parses and validates the JSON diagram format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDiagram = serde_json::from_str(text)?;
        Diagram::new(raw.mu, raw.arcs, raw.crossings)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arc(&self, id: &str) -> Option<&Arc> {
        self.index.get(id).map(|&i| &self.arcs[i])
    }

    /// Component label `κ(a)` of an arc.
    pub fn component_of(&self, id: &str) -> Option<usize> {
        self.arc(id).map(|a| a.component)
    }

    fn under_component(&self, c: &Crossing) -> usize {
        self.component_of(&c.left).expect("validated")
    }

    /// Diagram of the sublink with component `j` removed.
    ///
    /// Crossings where `j` passes under vanish; crossings where `j` passes over
    /// become trivial. Remaining components are renumbered `1..μ-1` in order.
    pub fn delete_component(&self, j: usize) -> Result<Diagram> {
        if j == 0 || j > self.mu {
            return Err(Error::ComponentOutOfRange { index: j, mu: self.mu });
        }
        if self.mu == 1 {
            return Err(Error::SingleComponent);
        }
        let relabel = |c: usize| if c > j { c - 1 } else { c };
        let arcs = self
            .arcs
            .iter()
            .filter(|a| a.component != j)
            .map(|a| Arc { id: a.id.clone(), component: relabel(a.component) })
            .collect();
        let crossings = self
            .crossings
            .iter()
            .filter(|c| self.under_component(c) != j)
            .map(|c| {
                let over_j = c.over.as_deref().and_then(|o| self.component_of(o)) == Some(j);
                if over_j {
                    Crossing { over: None, trivial: true, ..c.clone() }
                } else {
                    c.clone()
                }
            })
            .collect();
        Diagram::new(self.mu - 1, arcs, crossings)
    }

    /// Relabels component `i` as `sigma[i-1]`.
    pub fn permute_components(&self, sigma: &[usize]) -> Result<Diagram> {
        check_permutation(sigma, self.mu)?;
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc { id: a.id.clone(), component: sigma[a.component - 1] })
            .collect();
        Diagram::new(self.mu, arcs, self.crossings.clone())
    }
}

pub(crate) fn check_permutation(sigma: &[usize], mu: usize) -> Result<()> {
    let mut seen = vec![false; mu];
    if sigma.len() != mu {
        return Err(Error::NotAPermutation(mu));
    }
    for &s in sigma {
        if s == 0 || s > mu || seen[s - 1] {
            return Err(Error::NotAPermutation(mu));
        }
        seen[s - 1] = true;
    }
    Ok(())
}

pub fn parse_diagram(text: &str) -> Result<Diagram> {
    Diagram::from_json(text)
}

pub const FIXTURE_W: &str = include_str!("../../../fixtures/W.json");
pub const FIXTURE_L7_2_8: &str = include_str!("../../../fixtures/L7_2_8.json");
pub const FIXTURE_UNKNOT: &str = include_str!("../../../fixtures/unknot.json");
pub const FIXTURE_TREFOIL: &str = include_str!("../../../fixtures/trefoil.json");
pub const FIXTURE_UNLINK2: &str = include_str!("../../../fixtures/unlink2.json");

/// Bundled diagrams: Whitehead's link `W`, `L7_2_8`, `unknot`, `trefoil`, and the
/// two-component `unlink2`.
pub fn fixtures() -> BTreeMap<&'static str, Diagram> {
    [
        ("W", FIXTURE_W),
        ("L7_2_8", FIXTURE_L7_2_8),
        ("unknot", FIXTURE_UNKNOT),
        ("trefoil", FIXTURE_TREFOIL),
        ("unlink2", FIXTURE_UNLINK2),
    ]
    .into_iter()
    .map(|(name, text)| (name, Diagram::from_json(text).expect("bundled fixture is valid")))
    .collect()
}

pub fn fixture(name: &str) -> Option<Diagram> {
    fixtures().remove(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Diagram {
        fixture("W").unwrap()
    }

    #[test]
    fn whitehead_components() {
        let d = w();
        assert_eq!(d.arcs().len(), 5);
        assert_eq!(d.crossings().len(), 5);
        for a in ["a2", "a4", "a5"] {
            assert_eq!(d.component_of(a), Some(1));
        }
        for a in ["a1", "a3"] {
            assert_eq!(d.component_of(a), Some(2));
        }
    }

    #[test]
    fn unknot_fixture() {
        let d = fixture("unknot").unwrap();
        assert_eq!((d.mu(), d.arcs().len(), d.crossings().len()), (1, 1, 0));
    }

    #[test]
    fn rejects_mixed_under_strand() {
        let text = r#"{"mu":2,"arcs":[{"id":"a","component":1},{"id":"b","component":2},{"id":"c","component":1}],
            "crossings":[{"id":"x","over":"c","left":"a","right":"b"}]}"#;
        assert!(matches!(parse_diagram(text), Err(Error::UnderComponentMismatch { .. })));
    }

    #[test]
    fn rejects_bad_references_and_empty_components() {
        let unknown = r#"{"mu":1,"arcs":[{"id":"a","component":1}],"crossings":[{"id":"x","over":"z","left":"a","right":"a"}]}"#;
        assert!(matches!(parse_diagram(unknown), Err(Error::UnknownArc(_))));
        let empty = r#"{"mu":2,"arcs":[{"id":"a","component":1}],"crossings":[]}"#;
        assert!(matches!(parse_diagram(empty), Err(Error::EmptyComponent(2))));
        let syntax = r#"{"mu":1,"arcs":[{"id":"a","component":1}"#;
        assert!(matches!(parse_diagram(syntax), Err(Error::Json(_))));
        let same = r#"{"mu":1,"arcs":[{"id":"a","component":1}],"crossings":[{"id":"x","over":"a","left":"a","right":"a"}]}"#;
        assert!(parse_diagram(same).is_err());
    }

    #[test]
    fn delete_second_component_of_whitehead() {
        let d = w().delete_component(2).unwrap();
        assert_eq!(d.mu(), 1);
        let ids: Vec<_> = d.arcs().iter().map(|a| a.id.as_str()).collect();
        assert_eq!(ids, ["a2", "a4", "a5"]);
        let cs: Vec<_> = d.crossings().iter().map(|c| (c.id.as_str(), c.trivial)).collect();
        assert_eq!(cs, [("c2", true), ("c4", true), ("c5", false)]);
    }

    #[test]
    fn delete_from_unlink_and_l728() {
        let u = fixture("unlink2").unwrap().delete_component(1).unwrap();
        assert_eq!((u.mu(), u.arcs().len(), u.crossings().len()), (1, 1, 0));
        assert_eq!(u.arcs()[0].id, "a2");
        let l = fixture("L7_2_8").unwrap().delete_component(2).unwrap();
        let trivial: Vec<_> = l.crossings().iter().filter(|c| c.trivial).map(|c| c.id.as_str()).collect();
        let ordinary: Vec<_> = l.crossings().iter().filter(|c| !c.trivial).map(|c| c.id.as_str()).collect();
        assert_eq!(trivial, ["c2", "c6"]);
        assert_eq!(ordinary, ["c4", "c5", "c7"]);
    }

    #[test]
    fn delete_errors() {
        assert!(matches!(w().delete_component(3), Err(Error::ComponentOutOfRange { .. })));
        assert!(matches!(fixture("unknot").unwrap().delete_component(1), Err(Error::SingleComponent)));
    }

    #[test]
    fn permutations() {
        let d = w();
        assert_eq!(d.permute_components(&[1, 2]).unwrap(), d);
        let s = d.permute_components(&[2, 1]).unwrap();
        assert_eq!(s.component_of("a1"), Some(1));
        assert_eq!(s.component_of("a3"), Some(1));
        assert_eq!(s.permute_components(&[2, 1]).unwrap(), d);
        assert!(matches!(d.permute_components(&[1, 1]), Err(Error::NotAPermutation(2))));
        assert!(d.permute_components(&[1]).is_err());
    }

    #[test]
    fn json_round_trip_keeps_trivial_flag() {
        let d = w().delete_component(2).unwrap();
        let back = Diagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert!(d.to_json().contains("\"trivial\":true"));
    }
}
