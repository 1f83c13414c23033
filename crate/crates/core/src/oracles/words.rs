use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::wl::Digest;

/// A color word with colors named by digest, comparable across graphs.
pub type ColorWord = Vec<Digest>;

/// Multiset of color words.
pub type WordCounts = BTreeMap<ColorWord, u64>;

/// Prefix tree of interned color words. Word 0 is the empty word.
pub(crate) struct WordTrie {
    parent: Vec<(u32, u32)>,
    child: HashMap<(u32, u32), u32>,
}

impl WordTrie {
    pub fn new() -> Self {
        WordTrie {
            parent: vec![(0, 0)],
            child: HashMap::new(),
        }
    }

    pub fn extend(&mut self, word: u32, color: u32) -> u32 {
        let next = self.parent.len() as u32;
        *self.child.entry((word, color)).or_insert_with(|| {
            self.parent.push((word, color));
            next
        })
    }

    pub fn spell(&self, mut word: u32, palette: &[Digest]) -> ColorWord {
        let mut out = Vec::new();
        while word != 0 {
            let (p, c) = self.parent[word as usize];
            out.push(palette[c as usize]);
            word = p;
        }
        out.reverse();
        out
    }
}

pub(crate) fn add_count(slot: &mut u64, by: u64, what: &'static str) -> Result<()> {
    *slot = slot.checked_add(by).ok_or(Error::ResourceCap {
        what,
        limit: u64::MAX,
    })?;
    Ok(())
}

pub(crate) fn check_cap(size: usize, cap: u64, what: &'static str) -> Result<()> {
    if size as u64 > cap {
        return Err(Error::ResourceCap { what, limit: cap });
    }
    Ok(())
}
