//! Binary table cache.
//!
//! Layout, little-endian: magic `PWT1`, `u32` rank, `u8` class, `u64`
//! element count, one length byte per packed code, then for every code
//! `1..count` a `u64` predecessor followed by a `u64` palindrome code.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::table::{build_length_table, BuildOptions, LengthTable};
use super::PackedGroup;
use crate::error::{Error, Result};
use crate::nilpotent::code_bits;
use crate::palindromes;
use crate::words::GroupSpec;

pub const CACHE_MAGIC: &[u8; 4] = b"PWT1";

pub fn cache_file_name(spec: &GroupSpec) -> String {
    format!("pwt1-rank{}-class{}.bin", spec.rank(), spec.class())
}

pub fn write_table<W: Write>(table: &LengthTable, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    let spec = table.spec();
    out.write_all(CACHE_MAGIC)?;
    out.write_all(&(spec.rank() as u32).to_le_bytes())?;
    out.write_all(&[spec.class()])?;
    out.write_all(&(table.len() as u64).to_le_bytes())?;
    out.write_all(table.lengths())?;
    for code in 1..table.len() as u64 {
        let (pred, pal) = table.parent(code).expect("non-identity");
        out.write_all(&pred.to_le_bytes())?;
        out.write_all(&pal.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(input: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    input
        .read_exact(&mut buf)
        .map_err(|e| Error::Cache(format!("truncated file: {e}")))?;
    Ok(buf)
}

/// Reads a cached table for `spec`, checking the header and every parent
/// edge against the group law.
pub fn read_table<R: Read>(input: R, spec: &GroupSpec) -> Result<LengthTable> {
    spec.ensure_quotient()?;
    let mut input = BufReader::new(input);
    if &read_array::<4, _>(&mut input)? != CACHE_MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let rank = u32::from_le_bytes(read_array(&mut input)?) as usize;
    let [class] = read_array::<1, _>(&mut input)?;
    if rank != spec.rank() || class != spec.class() {
        return Err(Error::Cache(format!(
            "file holds rank {rank} class {class}, wanted {spec}"
        )));
    }
    let count = u64::from_le_bytes(read_array(&mut input)?);
    let group = PackedGroup::new(spec)?;
    if count != 1u64 << code_bits(spec) {
        return Err(Error::Cache(format!("element count {count} does not match {spec}")));
    }
    let count = count as usize;
    let mut lengths = vec![0u8; count];
    input
        .read_exact(&mut lengths)
        .map_err(|e| Error::Cache(format!("truncated lengths: {e}")))?;
    if lengths[0] != 0 {
        return Err(Error::Cache("identity length must be 0".into()));
    }
    let pals: std::collections::HashSet<u64> =
        palindromes::enumerate_codes(spec)?.into_iter().collect();
    let mut pred = vec![0u32; count];
    let mut pal = vec![0u32; count];
    for code in 1..count {
        let p = u64::from_le_bytes(read_array(&mut input)?);
        let q = u64::from_le_bytes(read_array(&mut input)?);
        if p >= count as u64 || !pals.contains(&q) || q == 0 {
            return Err(Error::Cache(format!("bad parent record for code {code}")));
        }
        let (p, q) = (p as u32, q as u32);
        if group.mul(p, q) as usize != code || lengths[p as usize] as usize + 1 != lengths[code] as usize {
            return Err(Error::Cache(format!("inconsistent parent for code {code}")));
        }
        pred[code] = p;
        pal[code] = q;
    }
    let mut rest = Vec::new();
    input.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    Ok(LengthTable::from_raw(*spec, lengths, pred, pal))
}

/// Loads `dir/<cache_file_name>` when it is valid, otherwise builds the
/// table and writes it there. Without a directory this just builds.
pub fn load_or_build(
    spec: &GroupSpec,
    options: &BuildOptions,
    dir: Option<&Path>,
) -> Result<LengthTable> {
    options.limits.check(spec)?;
    let Some(dir) = dir else {
        return build_length_table(spec, options);
    };
    let path: PathBuf = dir.join(cache_file_name(spec));
    if let Ok(file) = File::open(&path) {
        if let Ok(table) = read_table(file, spec) {
            return Ok(table);
        }
    }
    let table = build_length_table(spec, options)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    write_table(&table, File::create(&tmp)?)?;
    fs::rename(&tmp, &path)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize) -> LengthTable {
        build_length_table(&GroupSpec::quotient(n, 2).unwrap(), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn round_trip_and_layout() {
        let t = table(3);
        let mut bytes = Vec::new();
        write_table(&t, &mut bytes).unwrap();
        assert_eq!(&bytes[..4], b"PWT1");
        assert_eq!(&bytes[4..8], &3u32.to_le_bytes());
        assert_eq!(bytes[8], 2);
        assert_eq!(&bytes[9..17], &64u64.to_le_bytes());
        assert_eq!(bytes.len(), 17 + 64 + 63 * 16);
        let back = read_table(&bytes[..], t.spec()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_corrupt_files() {
        let t = table(2);
        let mut bytes = Vec::new();
        write_table(&t, &mut bytes).unwrap();
        let spec = *t.spec();

        let mut bad_magic = bytes.clone();
        bad_magic[3] = b'2';
        assert!(matches!(read_table(&bad_magic[..], &spec), Err(Error::Cache(_))));

        let other = GroupSpec::quotient(3, 2).unwrap();
        assert!(read_table(&bytes[..], &other).is_err());

        assert!(read_table(&bytes[..bytes.len() - 1], &spec).is_err());

        let mut extra = bytes.clone();
        extra.push(0);
        assert!(read_table(&extra[..], &spec).is_err());

        let mut wrong_length = bytes.clone();
        wrong_length[17 + 3] ^= 1;
        assert!(read_table(&wrong_length[..], &spec).is_err());
    }

    #[test]
    fn load_or_build_writes_then_reads() {
        let dir = tempfile::tempdir().unwrap();
        let spec = GroupSpec::quotient(3, 2).unwrap();
        let opts = BuildOptions::default();
        let cold = load_or_build(&spec, &opts, Some(dir.path())).unwrap();
        let path = dir.path().join(cache_file_name(&spec));
        assert!(path.exists());
        let warm = load_or_build(&spec, &opts, Some(dir.path())).unwrap();
        assert_eq!(cold, warm);

        // a damaged file is rebuilt
        fs::write(&path, b"PWT1junk").unwrap();
        assert_eq!(load_or_build(&spec, &opts, Some(dir.path())).unwrap(), cold);
        assert_eq!(read_table(File::open(&path).unwrap(), &spec).unwrap(), cold);
    }
}
