use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::{Error, Result};

use super::{construct, PermGroup, Permutation};

/// Textual description of a group.
///
/// JSON forms:
/// `{"name": "s3", "degree": 3, "generators": ["(1 2)", "(1 2 3)"]}`,
/// `{"construct": "dihedral:4"}`, or
/// `{"semidirect": {"normal": .., "complement": .., "action": [["(1 3 2)"]]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        degree: usize,
        generators: Vec<String>,
    },
    Construct {
        construct: String,
    },
    Semidirect {
        semidirect: SemidirectSpec,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectSpec {
    pub normal: Box<GroupSpec>,
    pub complement: Box<GroupSpec>,
    /// `action[i][j]`: image of normal generator `j` under complement
    /// generator `i`, in cycle notation on the normal subgroup's points.
    pub action: Vec<Vec<String>>,
}

impl GroupSpec {
    pub fn construct(s: impl Into<String>) -> Self {
        GroupSpec::Construct {
            construct: s.into(),
        }
    }

    pub fn explicit(group: &PermGroup, name: Option<&str>) -> Self {
        GroupSpec::Explicit {
            name: name.map(str::to_string),
            degree: group.degree(),
            generators: group
                .generators()
                .iter()
                .map(Permutation::to_cycle_string)
                .collect(),
        }
    }

    /// Accepts either a JSON document or a bare constructor string such as
    /// `sym:4`.
    pub fn parse_inline(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            serde_json::from_str(t).map_err(|e| Error::Format(format!("bad group spec: {e}")))
        } else if t.is_empty() {
            Err(Error::Format("empty group spec".into()))
        } else {
            Ok(GroupSpec::construct(t))
        }
    }
}

fn parse_args(kind: &str, args: &[&str], expected: usize) -> Result<Vec<usize>> {
    if args.len() != expected {
        return Err(Error::Format(format!(
            "constructor `{kind}` takes {expected} parameter(s), got {}",
            args.len()
        )));
    }
    args.iter()
        .map(|a| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| Error::Format(format!("bad parameter {a:?} for `{kind}`")))
        })
        .collect()
}

pub fn named_group(text: &str, guards: &Guards) -> Result<PermGroup> {
    let mut parts = text.trim().split(':');
    let kind = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    match kind {
        "cyclic" => construct::cyclic(parse_args(kind, &args, 1)?[0], guards),
        "elem_abelian" => {
            let a = parse_args(kind, &args, 2)?;
            construct::elementary_abelian(a[0], a[1], guards)
        }
        "dihedral" => construct::dihedral(parse_args(kind, &args, 1)?[0], guards),
        "sym" => construct::symmetric(parse_args(kind, &args, 1)?[0], guards),
        "alt" => construct::alternating(parse_args(kind, &args, 1)?[0], guards),
        "heisenberg" => {
            let n = parse_args(kind, &args, 1)?[0];
            crate::heisenberg::heisenberg_group(n as u64, guards)
        }
        "" => Err(Error::Format("empty constructor".into())),
        other => Err(Error::Format(format!("unknown constructor `{other}`"))),
    }
}

pub fn group_from_spec(spec: &GroupSpec, guards: &Guards) -> Result<PermGroup> {
    match spec {
        GroupSpec::Explicit {
            degree, generators, ..
        } => {
            guards.check_degree(*degree)?;
            let gens = generators
                .iter()
                .map(|g| Permutation::parse_cycles(g, *degree))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::with_guards(*degree, gens, guards)
        }
        GroupSpec::Construct { construct } => named_group(construct, guards),
        GroupSpec::Semidirect { semidirect } => {
            let n = group_from_spec(&semidirect.normal, guards)?;
            let h = group_from_spec(&semidirect.complement, guards)?;
            let action = semidirect
                .action
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| Permutation::parse_cycles(c, n.degree()))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            construct::semidirect_product(&n, &h, &action, guards)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(text: &str) -> Result<PermGroup> {
        group_from_spec(&GroupSpec::parse_inline(text)?, &Guards::default())
    }

    #[test]
    fn constructor_strings() {
        assert_eq!(build("cyclic:6").unwrap().order(), 6);
        assert_eq!(build("sym:4").unwrap().order(), 24);
        assert_eq!(build("heisenberg:3").unwrap().order(), 27);
        assert!(matches!(build("cyclic"), Err(Error::Format(_))));
        assert!(matches!(build("cyclic:x"), Err(Error::Format(_))));
        assert!(matches!(build("foo:3"), Err(Error::Format(_))));
        assert!(matches!(build("elem_abelian:2"), Err(Error::Format(_))));
    }

    #[test]
    fn json_forms() {
        let s3 =
            build(r#"{"name": "s3", "degree": 3, "generators": ["(1 2)", "(1 2 3)"]}"#).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(build(r#"{"degree": 3, "generators": ["(1 4)"]}"#).is_err());
        let sd = build(
            r#"{"semidirect": {"normal": {"construct": "cyclic:3"},
                               "complement": {"construct": "cyclic:2"},
                               "action": [["(1 3 2)"]]}}"#,
        )
        .unwrap();
        assert_eq!(sd.order(), 6);
        assert!(!sd.is_abelian());
        assert!(build("{not json").is_err());
    }

    #[test]
    fn round_trip_explicit() {
        let g = build("dihedral:5").unwrap();
        let spec = GroupSpec::explicit(&g, Some("d10"));
        let text = serde_json::to_string(&spec).unwrap();
        let back =
            group_from_spec(&GroupSpec::parse_inline(&text).unwrap(), &Guards::default()).unwrap();
        assert_eq!(back, g);
    }
}
