//! Sorted on-disk runs of `(y, x)` pairs and their k-way merge.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};

use crate::error::Result;

pub(crate) type Pair = (i64, i64);

pub(crate) struct RunWriter {
    dir: tempfile::TempDir,
    runs: Vec<std::path::PathBuf>,
}

impl RunWriter {
    pub(crate) fn new() -> Result<Self> {
        Ok(RunWriter {
            dir: tempfile::tempdir()?,
            runs: Vec::new(),
        })
    }

    /// Writes one run; `pairs` must already be sorted.
    pub(crate) fn push(&mut self, pairs: &[Pair]) -> Result<()> {
        let path = self
            .dir
            .path()
            .join(format!("run-{:06}.bin", self.runs.len()));
        let mut w = BufWriter::new(File::create(&path)?);
        for &(y, x) in pairs {
            w.write_all(&y.to_le_bytes())?;
            w.write_all(&x.to_le_bytes())?;
        }
        w.flush()?;
        self.runs.push(path);
        Ok(())
    }

    pub(crate) fn merge(self) -> Result<MergedRuns> {
        let mut readers = Vec::with_capacity(self.runs.len());
        let mut heap = BinaryHeap::new();
        for (i, path) in self.runs.iter().enumerate() {
            let mut r = BufReader::new(File::open(path)?);
            if let Some(pair) = read_pair(&mut r)? {
                heap.push(Reverse((pair, i)));
            }
            readers.push(r);
        }
        Ok(MergedRuns {
            _dir: self.dir,
            readers,
            heap,
        })
    }
}

fn read_pair(r: &mut impl Read) -> Result<Option<Pair>> {
    let mut buf = [0u8; 16];
    match r.read_exact(&mut buf) {
        Ok(()) => {
            let y = i64::from_le_bytes(buf[..8].try_into().expect("8 bytes"));
            let x = i64::from_le_bytes(buf[8..].try_into().expect("8 bytes"));
            Ok(Some((y, x)))
        }
        Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub(crate) struct MergedRuns {
    _dir: tempfile::TempDir,
    readers: Vec<BufReader<File>>,
    heap: BinaryHeap<Reverse<(Pair, usize)>>,
}

impl Iterator for MergedRuns {
    type Item = Result<Pair>;

    fn next(&mut self) -> Option<Self::Item> {
        let Reverse((pair, i)) = self.heap.pop()?;
        match read_pair(&mut self.readers[i]) {
            Ok(Some(next)) => self.heap.push(Reverse((next, i))),
            Ok(None) => {}
            Err(e) => return Some(Err(e)),
        }
        Some(Ok(pair))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_sorted_runs() {
        let mut w = RunWriter::new().unwrap();
        w.push(&[(-3, 1), (0, 5), (7, 7)]).unwrap();
        w.push(&[]).unwrap();
        w.push(&[(-3, 0), (2, 2), (7, 9)]).unwrap();
        let merged: Vec<Pair> = w.merge().unwrap().map(|r| r.unwrap()).collect();
        assert_eq!(merged, [(-3, 0), (-3, 1), (0, 5), (2, 2), (7, 7), (7, 9)]);
    }
}
