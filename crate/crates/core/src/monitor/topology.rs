use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ltl::{Event, Formula, Step};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Process {
    pub id: String,
    pub alphabet: BTreeSet<String>,
}

/// Processes with pairwise disjoint alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Topology {
    pub processes: Vec<Process>,
}

impl Topology {
    pub fn new<I, S>(processes: impl IntoIterator<Item = (S, I)>) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let processes: Vec<Process> = processes
            .into_iter()
            .map(|(id, atoms)| Process {
                id: id.into(),
                alphabet: atoms.into_iter().map(Into::into).collect(),
            })
            .collect();
        if processes.is_empty() {
            return Err(Error::InvalidTopology("no processes".into()));
        }
        let mut ids = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for p in &processes {
            if p.id.is_empty() {
                return Err(Error::InvalidTopology("empty process id".into()));
            }
            if !ids.insert(p.id.as_str()) {
                return Err(Error::InvalidTopology(format!(
                    "duplicate process `{}`",
                    p.id
                )));
            }
            for a in &p.alphabet {
                if !seen.insert(a.as_str()) {
                    return Err(Error::InvalidTopology(format!(
                        "atom `{a}` is observed by two processes"
                    )));
                }
            }
        }
        Ok(Topology { processes })
    }

    pub fn len(&self) -> usize {
        self.processes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.processes.is_empty()
    }

    pub fn alphabet(&self) -> BTreeSet<String> {
        self.processes
            .iter()
            .flat_map(|p| p.alphabet.iter().cloned())
            .collect()
    }

    pub fn process(&self, id: &str) -> Option<&Process> {
        self.processes.iter().find(|p| p.id == id)
    }

    pub fn owner(&self, atom: &str) -> Option<&str> {
        self.processes
            .iter()
            .find(|p| p.alphabet.contains(atom))
            .map(|p| p.id.as_str())
    }

    pub fn check_covers(&self, f: &Formula) -> Result<()> {
        let all = self.alphabet();
        let missing: Vec<String> = f.props().into_iter().filter(|a| !all.contains(a)).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::IncompleteTopology(missing))
        }
    }

    /// Splits a global step into one event per process. Atoms of the step
    /// outside the topology are ignored.
    pub fn split(&self, step: &Step) -> Vec<Event> {
        self.processes
            .iter()
            .map(|p| Event {
                process: p.id.clone(),
                props: step
                    .iter()
                    .filter(|(a, _)| p.alphabet.contains(*a))
                    .map(|(a, v)| (a.clone(), *v))
                    .collect(),
            })
            .collect()
    }

    /// Checks that `events` hold exactly one event per process, each total
    /// over that process's alphabet, and indexes them by process id.
    pub fn index_events<'a>(&self, events: &'a [Event]) -> Result<BTreeMap<&'a str, &'a Event>> {
        let mut by_id = BTreeMap::new();
        for e in events {
            let p = self
                .process(&e.process)
                .ok_or_else(|| Error::AlphabetMismatch {
                    process: e.process.clone(),
                })?;
            let keys: BTreeSet<&String> = e.props.keys().collect();
            if keys != p.alphabet.iter().collect() || by_id.insert(e.process.as_str(), e).is_some()
            {
                return Err(Error::AlphabetMismatch {
                    process: e.process.clone(),
                });
            }
        }
        if let Some(p) = self
            .processes
            .iter()
            .find(|p| !by_id.contains_key(p.id.as_str()))
        {
            return Err(Error::AlphabetMismatch {
                process: p.id.clone(),
            });
        }
        Ok(by_id)
    }
}

impl FromStr for Topology {
    type Err = Error;

    /// `A:a1,a2;B:b;C:c`
    fn from_str(s: &str) -> Result<Self> {
        let mut procs = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (id, atoms) = part.split_once(':').ok_or_else(|| {
                Error::InvalidTopology(format!("expected `id:atoms`, got `{part}`"))
            })?;
            let atoms: Vec<String> = atoms
                .split(',')
                .map(str::trim)
                .filter(|a| !a.is_empty())
                .map(String::from)
                .collect();
            procs.push((id.trim().to_string(), atoms));
        }
        Topology::new(procs)
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .processes
            .iter()
            .map(|p| {
                let atoms: Vec<&str> = p.alphabet.iter().map(String::as_str).collect();
                format!("{}:{}", p.id, atoms.join(","))
            })
            .collect();
        f.write_str(&parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let t: Topology = "A:a1,a2;B:b;C:c".parse().unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.owner("a2"), Some("A"));
        assert_eq!(t.to_string(), "A:a1,a2;B:b;C:c");
        assert!("A:a;B:a".parse::<Topology>().is_err());
        assert!("A:a;A:b".parse::<Topology>().is_err());
        assert!("Aa".parse::<Topology>().is_err());
    }

    #[test]
    fn coverage_and_events() {
        let t: Topology = "A:a;B:b".parse().unwrap();
        let f = crate::ltl::parse("a & b & c").unwrap();
        assert!(
            matches!(t.check_covers(&f), Err(Error::IncompleteTopology(m)) if m == vec!["c".to_string()])
        );
        let step: Step = [("a".to_string(), true), ("b".to_string(), false)].into();
        let events = t.split(&step);
        assert!(t.index_events(&events).is_ok());
        assert!(t.index_events(&events[..1]).is_err());
        let mut bad = events.clone();
        bad[0].props.clear();
        assert!(matches!(
            t.index_events(&bad),
            Err(Error::AlphabetMismatch { .. })
        ));
    }
}
