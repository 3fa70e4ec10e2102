//! Thread-safe compiled regex.

use std::sync::Mutex;

use locre_core::{Cache, MatchSpan};

use crate::error::Error;

/// A compiled pattern usable from several threads at once. Each call
/// borrows a derivative cache from an internal pool.
pub struct Regex {
    inner: locre_core::Regex,
    pool: Mutex<Vec<Cache>>,
}

impl Regex {
    pub fn new(pattern: &str) -> Result<Regex, Error> {
        Ok(Regex::from_core(locre_core::Regex::new(pattern)?))
    }

    pub fn from_core(inner: locre_core::Regex) -> Regex {
        Regex { inner, pool: Mutex::new(Vec::new()) }
    }

    pub fn with_skip(self, skip: bool) -> Regex {
        Regex::from_core(self.inner.with_skip(skip))
    }

    pub fn core(&self) -> &locre_core::Regex {
        &self.inner
    }

    pub fn pattern(&self) -> &str {
        self.inner.pattern()
    }

    fn with_cache<T>(&self, f: impl FnOnce(&locre_core::Regex, &mut Cache) -> T) -> T {
        let cache = self.pool.lock().unwrap_or_else(|e| e.into_inner()).pop();
        let mut cache = cache.unwrap_or_else(|| self.inner.create_cache());
        let out = f(&self.inner, &mut cache);
        self.pool.lock().unwrap_or_else(|e| e.into_inner()).push(cache);
        out
    }

    pub fn is_match(&self, subject: &[u16]) -> bool {
        self.with_cache(|re, c| re.is_match(c, subject))
    }

    pub fn find(&self, subject: &[u16]) -> Option<MatchSpan> {
        self.with_cache(|re, c| re.find(c, subject))
    }

    pub fn find_all(&self, subject: &[u16]) -> Vec<MatchSpan> {
        self.with_cache(|re, c| re.find_all(c, subject))
    }

    pub fn count(&self, subject: &[u16]) -> usize {
        self.with_cache(|re, c| re.count(c, subject))
    }

    /// Leftmost-longest match by the two-pass reference definition.
    pub fn find_reference(&self, subject: &[u16]) -> Option<MatchSpan> {
        self.with_cache(|re, c| re.find_reference(c, subject))
    }

    /// Convenience for `&str` subjects; fails on non-BMP characters.
    pub fn find_str(&self, text: &str) -> Result<Option<MatchSpan>, Error> {
        let s = crate::decode::decode_str(text)?;
        Ok(self.find(&s.units))
    }
}

impl std::fmt::Debug for Regex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Regex").field(&self.inner.pattern()).finish()
    }
}
