//! JSON exchange format for curves, crossing instances and st-connectivity
//! instances.
//!
//! ```json
//! { "n": 6, "form": "seq", "offset": [0, 0],
//!   "blue": { "kind": "closed", "points": [[1,1], [2,1], ...] },
//!   "red":  { "kind": "open",   "points": [[3,4], [3,3], ...] },
//!   "sides": { "p1": [3,4], "p2": [3,6] } }
//! ```
//!
//! In the set form `blue` and `red` are lists of edges `[[x1,y1],[x2,y2]]`.
//! Closed point lists do not repeat the start point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Edge, EdgeSequence, EdgeSet, GridPoint, SequenceKind, SidePair};
use crate::reductions::{JctInstance, StConnInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Set,
    Seq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Seq { kind: SequenceKind, points: Vec<[u32; 2]> },
    Set(Vec<[[u32; 2]; 2]>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sides {
    pub p1: [u32; 2],
    pub p2: [u32; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub n: u32,
    pub form: Form,
    #[serde(default)]
    pub offset: (i64, i64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blue: Option<Payload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub red: Option<Payload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<Sides>,
}

/// What an instance describes, judged by which parts are present.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Empty,
    Curve,
    StConn,
    Jct,
}

fn pt(p: [u32; 2]) -> GridPoint {
    GridPoint::new(p[0], p[1])
}

fn arr(p: GridPoint) -> [u32; 2] {
    [p.x, p.y]
}

pub fn seq_payload(s: &EdgeSequence) -> Payload {
    Payload::Seq { kind: s.kind(), points: s.points().into_iter().map(arr).collect() }
}

pub fn set_payload(s: &EdgeSet) -> Payload {
    Payload::Set(s.iter().map(|e| [arr(e.a()), arr(e.b())]).collect())
}

impl Instance {
    pub fn empty(n: u32, form: Form) -> Instance {
        Instance { n, form, offset: (0, 0), blue: None, red: None, sides: None }
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let inst: Instance = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        for p in [&inst.blue, &inst.red].into_iter().flatten() {
            let ok = matches!((inst.form, p), (Form::Set, Payload::Set(_)) | (Form::Seq, Payload::Seq { .. }));
            if !ok {
                return Err(Error::Format(format!("payload does not match form {:?}", inst.form)));
            }
        }
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    pub fn role(&self) -> Role {
        match (&self.blue, &self.red, &self.sides) {
            (None, None, _) => Role::Empty,
            (Some(_), None, None) => Role::Curve,
            (_, _, Some(_)) => Role::Jct,
            _ => Role::StConn,
        }
    }

    pub fn side_pair(&self) -> Result<Option<SidePair>> {
        self.sides.map(|s| SidePair::new(pt(s.p1), pt(s.p2))).transpose()
    }

    fn payload_set(&self, p: &Payload) -> Result<EdgeSet> {
        match p {
            Payload::Set(edges) => {
                let es = edges.iter().map(|[a, b]| Edge::new(pt(*a), pt(*b))).collect::<Result<Vec<_>>>()?;
                EdgeSet::from_edges(self.n, es)
            }
            Payload::Seq { .. } => Ok(self.payload_seq(p)?.to_edge_set()),
        }
    }

    fn payload_seq(&self, p: &Payload) -> Result<EdgeSequence> {
        match p {
            Payload::Seq { kind, points } => {
                let pts: Vec<GridPoint> = points.iter().copied().map(pt).collect();
                EdgeSequence::from_points(self.n, *kind, &pts)
            }
            Payload::Set(_) => Err(Error::Format("an edge set has no order".into())),
        }
    }

    fn part(&self, p: &Option<Payload>, what: &str) -> Result<Payload> {
        p.clone().ok_or_else(|| Error::Format(format!("instance has no {what} part")))
    }

    pub fn blue_set(&self) -> Result<EdgeSet> {
        self.payload_set(&self.part(&self.blue, "blue")?)
    }

    pub fn red_set(&self) -> Result<EdgeSet> {
        self.payload_set(&self.part(&self.red, "red")?)
    }

    pub fn blue_seq(&self) -> Result<EdgeSequence> {
        self.payload_seq(&self.part(&self.blue, "blue")?)
    }

    pub fn red_seq(&self) -> Result<EdgeSequence> {
        self.payload_seq(&self.part(&self.red, "red")?)
    }

    fn sides_required(&self) -> Result<SidePair> {
        self.side_pair()?.ok_or_else(|| Error::Format("instance has no side pair".into()))
    }

    pub fn jct_set(&self) -> Result<JctInstance<EdgeSet>> {
        Ok(JctInstance {
            n: self.n,
            blue: self.blue_set()?,
            red: self.red_set()?,
            sides: self.sides_required()?,
            offset: self.offset,
        })
    }

    pub fn jct_seq(&self) -> Result<JctInstance<EdgeSequence>> {
        Ok(JctInstance {
            n: self.n,
            blue: self.blue_seq()?,
            red: self.red_seq()?,
            sides: self.sides_required()?,
            offset: self.offset,
        })
    }

    pub fn stconn_set(&self) -> Result<StConnInstance<EdgeSet>> {
        Ok(StConnInstance { n: self.n, blue: self.blue_set()?, red: self.red_set()? })
    }

    pub fn stconn_seq(&self) -> Result<StConnInstance<EdgeSequence>> {
        Ok(StConnInstance { n: self.n, blue: self.blue_seq()?, red: self.red_seq()? })
    }

    pub fn from_curve(curve: &EdgeSequence) -> Instance {
        Instance { blue: Some(seq_payload(curve)), ..Instance::empty(curve.n(), Form::Seq) }
    }

    fn with_sides(mut self, sides: &SidePair, offset: (i64, i64)) -> Instance {
        self.sides = Some(Sides { p1: arr(sides.p1), p2: arr(sides.p2) });
        self.offset = offset;
        self
    }

    pub fn from_jct_seq(inst: &JctInstance<EdgeSequence>) -> Instance {
        Instance {
            blue: Some(seq_payload(&inst.blue)),
            red: Some(seq_payload(&inst.red)),
            ..Instance::empty(inst.n, Form::Seq)
        }
        .with_sides(&inst.sides, inst.offset)
    }

    pub fn from_jct_set(inst: &JctInstance<EdgeSet>) -> Instance {
        Instance {
            blue: Some(set_payload(&inst.blue)),
            red: Some(set_payload(&inst.red)),
            ..Instance::empty(inst.n, Form::Set)
        }
        .with_sides(&inst.sides, inst.offset)
    }

    pub fn from_stconn_seq(inst: &StConnInstance<EdgeSequence>) -> Instance {
        Instance {
            blue: Some(seq_payload(&inst.blue)),
            red: Some(seq_payload(&inst.red)),
            ..Instance::empty(inst.n, Form::Seq)
        }
    }

    pub fn from_stconn_set(inst: &StConnInstance<EdgeSet>) -> Instance {
        Instance {
            blue: Some(set_payload(&inst.blue)),
            red: Some(set_payload(&inst.red)),
            ..Instance::empty(inst.n, Form::Set)
        }
    }

    /// Checks the predicates for the role the instance declares.
    pub fn validate(&self) -> Result<Role> {
        let role = self.role();
        match (role, self.form) {
            (Role::Empty, _) => {}
            (Role::Curve, Form::Seq) => {
                if !self.blue_seq()?.is_closed() {
                    return Err(Error::Precondition("blue is not a closed curve".into()));
                }
            }
            (Role::Curve, Form::Set) => {
                if !self.blue_set()?.is_curve() {
                    return Err(Error::Precondition("blue edges do not form a curve".into()));
                }
            }
            (Role::Jct, Form::Seq) => self.jct_seq()?.validate()?,
            (Role::Jct, Form::Set) => self.jct_set()?.validate()?,
            (Role::StConn, Form::Seq) => self.stconn_seq()?.validate()?,
            (Role::StConn, Form::Set) => self.stconn_set()?.validate()?,
        }
        Ok(role)
    }
}
