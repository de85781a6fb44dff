//! Plain-text search checkpoints.
//!
//! ```text
//! trideg-checkpoint v1
//! order 7
//! regular -
//! max-edges -
//! pruned 1
//! range-start 0
//! range-end 2097152
//! cursor 1048576
//! labeled 1048576
//! td-labeled 5040
//! hit <graph6> <labeled count>
//! ```
//!
//! Each `hit` line holds a triangle-distinct graph relabelled by descending
//! triangle-degree.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::graph::Graph;
use crate::graph6;

use super::{SearchError, Tally};

const MAGIC: &str = "trideg-checkpoint v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub order: usize,
    pub regular_degree: Option<usize>,
    pub max_edges: Option<usize>,
    pub pruned: bool,
    pub range_start: u64,
    pub range_end: u64,
    pub cursor: u64,
    pub(crate) tally: Tally,
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn bad(msg: impl Into<String>) -> SearchError {
    SearchError::CheckpointFormat(msg.into())
}

impl Checkpoint {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{MAGIC}");
        let _ = writeln!(s, "order {}", self.order);
        let _ = writeln!(s, "regular {}", opt(self.regular_degree));
        let _ = writeln!(s, "max-edges {}", opt(self.max_edges));
        let _ = writeln!(s, "pruned {}", self.pruned as u8);
        let _ = writeln!(s, "range-start {}", self.range_start);
        let _ = writeln!(s, "range-end {}", self.range_end);
        let _ = writeln!(s, "cursor {}", self.cursor);
        let _ = writeln!(s, "labeled {}", self.tally.labeled);
        let _ = writeln!(s, "td-labeled {}", self.tally.td);
        for (&code, &count) in &self.tally.classes {
            let g = Graph::from_pair_code(self.order, code);
            let _ = writeln!(s, "hit {} {count}", graph6::encode_string(&g));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Checkpoint, SearchError> {
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Err(bad("missing header line"));
        }
        let mut field = |name: &str| -> Result<String, SearchError> {
            let line = lines.next().ok_or_else(|| bad(format!("missing `{name}`")))?;
            line.strip_prefix(name)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| bad(format!("expected `{name}`, found `{line}`")))
        };
        fn num<T: std::str::FromStr>(name: &str, v: &str) -> Result<T, SearchError> {
            v.parse().map_err(|_| bad(format!("bad value `{v}` for `{name}`")))
        }
        fn opt_num(name: &str, v: &str) -> Result<Option<usize>, SearchError> {
            if v == "-" {
                Ok(None)
            } else {
                num(name, v).map(Some)
            }
        }
        let order: usize = num("order", &field("order")?)?;
        let regular_degree = opt_num("regular", &field("regular")?)?;
        let max_edges = opt_num("max-edges", &field("max-edges")?)?;
        let pruned = match field("pruned")?.as_str() {
            "0" => false,
            "1" => true,
            v => return Err(bad(format!("bad value `{v}` for `pruned`"))),
        };
        let range_start = num("range-start", &field("range-start")?)?;
        let range_end = num("range-end", &field("range-end")?)?;
        let cursor = num("cursor", &field("cursor")?)?;
        let labeled = num("labeled", &field("labeled")?)?;
        let td = num("td-labeled", &field("td-labeled")?)?;
        if order > super::MAX_SEARCH_ORDER || !(range_start <= cursor && cursor <= range_end) {
            return Err(bad("inconsistent order or cursor"));
        }
        let mut tally = Tally {
            labeled,
            td,
            ..Tally::default()
        };
        for line in lines {
            let rest = line.strip_prefix("hit ").ok_or_else(|| bad(format!("unexpected line `{line}`")))?;
            let (g6, count) = rest.split_once(' ').ok_or_else(|| bad(format!("bad hit line `{line}`")))?;
            let g = graph6::decode_str(g6).map_err(|e| bad(format!("hit `{g6}`: {e}")))?;
            if g.order() != order {
                return Err(bad(format!("hit `{g6}` has order {}", g.order())));
            }
            tally.classes.insert(g.pair_code(), num("hit count", count)?);
        }
        Ok(Checkpoint {
            order,
            regular_degree,
            max_edges,
            pruned,
            range_start,
            range_end,
            cursor,
            tally,
        })
    }

    pub fn load(path: &Path) -> Result<Checkpoint, SearchError> {
        Checkpoint::parse(&fs::read_to_string(path)?)
    }

    /// Writes via a temporary file and rename so a crash never leaves a
    /// half-written checkpoint.
    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, self.render())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub(crate) fn ensure_compatible(&self, fresh: &Checkpoint) -> Result<(), SearchError> {
        let same = self.order == fresh.order
            && self.regular_degree == fresh.regular_degree
            && self.max_edges == fresh.max_edges
            && self.pruned == fresh.pruned
            && self.range_start == fresh.range_start
            && self.range_end == fresh.range_end;
        if same {
            Ok(())
        } else {
            Err(SearchError::CheckpointMismatch(format!(
                "checkpoint is for order {} regular {} max-edges {} range {}..{}",
                self.order,
                opt(self.regular_degree),
                opt(self.max_edges),
                self.range_start,
                self.range_end
            )))
        }
    }
}
