//! CSV export and a compact binary cache for arithmetic tables.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::arith::sieve::sieve;
use crate::arith::table::{ArithFn, ArithmeticTable, Values};
use crate::error::{Error, Result};
use crate::numeric::fmt_f64;

const MAGIC: &[u8; 8] = b"ERGWTBL1";
pub const CACHE_ENV: &str = "ERGW_CACHE_DIR";

impl ArithmeticTable {
    /// Writes `n,value,summatory` rows for `n = 1..=N`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut out = BufWriter::new(out);
        writeln!(out, "n,value,summatory")?;
        for k in 1..=self.len() {
            match self.storage() {
                Values::Int(v) => writeln!(out, "{k},{},{}", v[k], self.summatory(k) as i64)?,
                Values::Real(v) => writeln!(out, "{k},{},{}", fmt_f64(v[k]), fmt_f64(self.summatory(k)))?,
            }
        }
        out.flush()?;
        Ok(())
    }

    /// Serializes to the binary cache format.
    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        let label = self.label().as_bytes();
        out.write_all(MAGIC)?;
        out.write_all(&(label.len() as u32).to_le_bytes())?;
        out.write_all(label)?;
        out.write_all(&(self.len() as u64).to_le_bytes())?;
        let s = self.kind().and_then(|k| k.exponent()).unwrap_or(f64::NAN);
        out.write_all(&s.to_le_bytes())?;
        let mut buf = Vec::with_capacity(8 * (self.len() + 1) + 1);
        match self.storage() {
            Values::Int(v) => {
                buf.push(0u8);
                v[1..].iter().for_each(|x| buf.extend_from_slice(&x.to_le_bytes()));
            }
            Values::Real(v) => {
                buf.push(1u8);
                v[1..].iter().for_each(|x| buf.extend_from_slice(&x.to_le_bytes()));
            }
        }
        out.write_all(&buf)?;
        Ok(())
    }

    /// Reads a table written by [`write_binary`](Self::write_binary).
    pub fn read_binary<R: Read>(mut input: R) -> Result<Self> {
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes)?;
        let mut cur = Cursor { bytes: &bytes, pos: 0 };
        if cur.take(8)? != MAGIC {
            return Err(Error::Format("bad table magic".into()));
        }
        let label_len = u32::from_le_bytes(cur.take(4)?.try_into().unwrap()) as usize;
        let label = String::from_utf8(cur.take(label_len)?.to_vec())
            .map_err(|_| Error::Format("table label is not UTF-8".into()))?;
        let n = u64::from_le_bytes(cur.take(8)?.try_into().unwrap()) as usize;
        let s = f64::from_le_bytes(cur.take(8)?.try_into().unwrap());
        let tag = cur.take(1)?[0];
        let raw = cur.take(8 * n)?;
        let words = raw.chunks_exact(8).map(|c| <[u8; 8]>::try_from(c).unwrap());
        let values = match tag {
            0 => Values::Int(std::iter::once(0).chain(words.map(i64::from_le_bytes)).collect()),
            1 => Values::Real(std::iter::once(0.0).chain(words.map(f64::from_le_bytes)).collect()),
            _ => return Err(Error::Format(format!("unknown value tag {tag}"))),
        };
        let kind = label.parse::<ArithFn>().ok().filter(|k| match k.exponent() {
            Some(e) => e.to_bits() == s.to_bits(),
            None => s.is_nan(),
        });
        ArithmeticTable::from_values(label, kind, values)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Format("truncated table file".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }
}

/// Cache file for `(f, N)` under `dir`.
pub fn cache_path(dir: &Path, f: ArithFn, n: usize) -> PathBuf {
    let s = f
        .exponent()
        .map(|s| format!("{:016x}", s.to_bits()))
        .unwrap_or_else(|| "none".into());
    dir.join(format!("{}-{n}-{s}.tbl", f.short_name()))
}

/// Sieves `f` up to `n`, reusing a binary cache in `$ERGW_CACHE_DIR` when set.
pub fn cached_sieve(f: ArithFn, n: usize) -> Result<ArithmeticTable> {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => sieve_with_cache(f, n, Path::new(&dir)),
        _ => sieve(f, n),
    }
}

/// Sieves `f` up to `n` through a cache directory.
pub fn sieve_with_cache(f: ArithFn, n: usize, dir: &Path) -> Result<ArithmeticTable> {
    let path = cache_path(dir, f, n);
    if let Ok(file) = fs::File::open(&path) {
        if let Ok(t) = ArithmeticTable::read_binary(std::io::BufReader::new(file)) {
            if t.len() == n {
                return Ok(t);
            }
        }
    }
    let table = sieve(f, n)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    table.write_binary(BufWriter::new(fs::File::create(&tmp)?))?;
    fs::rename(&tmp, &path)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows() {
        let t = sieve(ArithFn::Divisors, 4).unwrap();
        let mut out = Vec::new();
        t.write_csv(&mut out).unwrap();
        let s = String::from_utf8(out).unwrap();
        assert_eq!(s, "n,value,summatory\n1,1,1\n2,2,3\n3,2,5\n4,3,8\n");
    }

    #[test]
    fn binary_round_trip() {
        for f in [ArithFn::Mobius, ArithFn::DivisorPower(0.5), ArithFn::Jordan(2.0)] {
            let t = sieve(f, 500).unwrap();
            let mut buf = Vec::new();
            t.write_binary(&mut buf).unwrap();
            let back = ArithmeticTable::read_binary(&buf[..]).unwrap();
            assert_eq!(back.len(), 500);
            assert_eq!(back.kind(), Some(f));
            assert!(back.agrees_with(&t, 0.0));
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(ArithmeticTable::read_binary(&b"nope"[..]).is_err());
        let t = sieve(ArithFn::One, 10).unwrap();
        let mut buf = Vec::new();
        t.write_binary(&mut buf).unwrap();
        buf.truncate(buf.len() - 3);
        assert!(matches!(ArithmeticTable::read_binary(&buf[..]), Err(Error::Format(_))));
    }

    #[test]
    fn cache_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let a = sieve_with_cache(ArithFn::Divisors, 1000, dir.path()).unwrap();
        assert!(cache_path(dir.path(), ArithFn::Divisors, 1000).exists());
        let b = sieve_with_cache(ArithFn::Divisors, 1000, dir.path()).unwrap();
        assert!(a.agrees_with(&b, 0.0));
    }
}
