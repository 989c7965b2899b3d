//! Little helpers for the word-array serialization every structure uses.

use crate::error::{Error, Result};

pub(crate) struct WordReader<'a> {
    words: &'a [u64],
    pos: usize,
}

impl<'a> WordReader<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        WordReader { words, pos: 0 }
    }

    pub(crate) fn next(&mut self) -> Result<u64> {
        let w = *self
            .words
            .get(self.pos)
            .ok_or_else(|| Error::Corrupt("truncated word stream".into()))?;
        self.pos += 1;
        Ok(w)
    }

    pub(crate) fn next_usize(&mut self) -> Result<usize> {
        let w = self.next()?;
        usize::try_from(w).map_err(|_| Error::Corrupt(format!("value {w} does not fit usize")))
    }

    pub(crate) fn take(&mut self, count: usize) -> Result<&'a [u64]> {
        let end = self
            .pos
            .checked_add(count)
            .filter(|&e| e <= self.words.len())
            .ok_or_else(|| Error::Corrupt("truncated word stream".into()))?;
        let out = &self.words[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub(crate) fn finish(self) -> Result<()> {
        if self.pos == self.words.len() {
            Ok(())
        } else {
            Err(Error::Corrupt(format!(
                "{} trailing words in section",
                self.words.len() - self.pos
            )))
        }
    }
}
