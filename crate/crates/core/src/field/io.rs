//! Field and mask export formats.
//!
//! Binary dump: 16-byte header (magic "SJLF", u32 n_x, u32 n_y, u32 reserved),
//! then row-major little-endian f64 values. A sidecar `<path>.meta` records
//! the provenance as `key = value` lines.

use super::{FieldKind, LatticeField, LatticeSpec};
use crate::error::{Error, Result};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"SJLF";

pub fn write_field_binary(field: &LatticeField, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&(field.spec.n_x as u32).to_le_bytes())?;
    w.write_all(&(field.spec.n_y as u32).to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    for v in &field.values {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    let meta_path = sidecar_path(path);
    let mut meta = BufWriter::new(File::create(meta_path)?);
    writeln!(meta, "format = sjlf-v1")?;
    writeln!(meta, "n_x = {}", field.spec.n_x)?;
    writeln!(meta, "n_y = {}", field.spec.n_y)?;
    writeln!(meta, "dx = {}", field.spec.dx)?;
    writeln!(meta, "seed = {}", field.seed)?;
    match &field.kind {
        FieldKind::Gaussian(model) => writeln!(meta, "model = {}", model.config_string())?,
        FieldKind::FisherSnedecor { numerator, total } => {
            writeln!(meta, "model = fisher_snedecor n={numerator} m={total}")?
        }
    }
    meta.flush()?;
    Ok(())
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(".meta");
    os.into()
}

/// Reads a binary field dump. The sidecar is consulted for dx and seed when
/// present; otherwise dx defaults to 1 and seed to 0.
pub fn read_field_binary(path: &Path) -> Result<LatticeField> {
    let mut r = BufReader::new(File::open(path)?);
    let mut header = [0u8; 16];
    r.read_exact(&mut header)?;
    if &header[0..4] != MAGIC {
        return Err(Error::Config(format!(
            "{} is not a field dump (bad magic)",
            path.display()
        )));
    }
    let n_x = u32::from_le_bytes(header[4..8].try_into().unwrap()) as usize;
    let n_y = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
    let mut dx = 1.0f64;
    let mut seed = 0u64;
    let mut kind = None;
    if let Ok(meta) = File::open(sidecar_path(path)) {
        for line in BufReader::new(meta).lines() {
            let line = line?;
            if let Some((key, value)) = line.split_once('=') {
                let (key, value) = (key.trim(), value.trim());
                match key {
                    "dx" => dx = value.parse().unwrap_or(1.0),
                    "seed" => seed = value.parse().unwrap_or(0),
                    "model" => {
                        kind = crate::covariance::CovarianceModel::parse(value)
                            .ok()
                            .map(FieldKind::Gaussian)
                            .or_else(|| parse_f_kind(value));
                    }
                    _ => {}
                }
            }
        }
    }
    let spec = LatticeSpec::new(n_x, n_y, dx)?;
    let mut values = vec![0.0f64; n_x * n_y];
    let mut bytes = vec![0u8; 8 * values.len()];
    r.read_exact(&mut bytes)?;
    for (v, chunk) in values.iter_mut().zip(bytes.chunks_exact(8)) {
        *v = f64::from_le_bytes(chunk.try_into().unwrap());
    }
    Ok(LatticeField {
        spec,
        values,
        seed,
        kind: kind.unwrap_or(FieldKind::Gaussian(
            crate::covariance::CovarianceModel::SquaredExponential,
        )),
    })
}

fn parse_f_kind(value: &str) -> Option<FieldKind> {
    let mut n = None;
    let mut m = None;
    let mut tokens = value.split_whitespace();
    if tokens.next()? != "fisher_snedecor" {
        return None;
    }
    for token in tokens {
        let (key, v) = token.split_once('=')?;
        match key {
            "n" => n = v.parse().ok(),
            "m" => m = v.parse().ok(),
            _ => return None,
        }
    }
    Some(FieldKind::FisherSnedecor {
        numerator: n?,
        total: m?,
    })
}

/// CSV export with an `x,y,value` header, one row per grid node.
pub fn write_field_csv(field: &LatticeField, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,y,value")?;
    for iy in 0..field.spec.n_y {
        for ix in 0..field.spec.n_x {
            writeln!(
                w,
                "{},{},{}",
                ix as f64 * field.spec.dx,
                iy as f64 * field.spec.dx,
                field.get(ix, iy)
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Binary PGM (P5, 8-bit); excursion cells are written as 255.
pub fn write_mask_pgm(mask: &[bool], n_x: usize, n_y: usize, path: &Path) -> Result<()> {
    if mask.len() != n_x * n_y {
        return Err(Error::Shape(format!(
            "mask length {} does not match {n_x}x{n_y}",
            mask.len()
        )));
    }
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "P5\n{n_x} {n_y}\n255\n")?;
    let bytes: Vec<u8> = mask.iter().map(|&b| if b { 255 } else { 0 }).collect();
    w.write_all(&bytes)?;
    w.flush()?;
    Ok(())
}

pub fn write_mask_csv(mask: &[bool], n_x: usize, n_y: usize, path: &Path) -> Result<()> {
    if mask.len() != n_x * n_y {
        return Err(Error::Shape(format!(
            "mask length {} does not match {n_x}x{n_y}",
            mask.len()
        )));
    }
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,y,excursion")?;
    for iy in 0..n_y {
        for ix in 0..n_x {
            writeln!(w, "{ix},{iy},{}", u8::from(mask[iy * n_x + ix]))?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariance::CovarianceModel;

    #[test]
    fn binary_round_trip_preserves_bits() {
        let spec = LatticeSpec::new(5, 3, 0.5).unwrap();
        let field = LatticeField {
            spec,
            values: (0..15).map(|i| (i as f64).sin() * 1e-3 + 1.0 / 3.0).collect(),
            seed: 77,
            kind: FieldKind::Gaussian(CovarianceModel::cauchy(0.65).unwrap()),
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("field.bin");
        write_field_binary(&field, &path).unwrap();
        let back = read_field_binary(&path).unwrap();
        assert_eq!(back.spec, spec);
        assert_eq!(back.seed, 77);
        assert_eq!(back.values, field.values);
        assert_eq!(back.kind, field.kind);
    }

    #[test]
    fn header_bytes_are_fixed() {
        let spec = LatticeSpec::new(2, 2, 1.0).unwrap();
        let field = LatticeField {
            spec,
            values: vec![0.0; 4],
            seed: 0,
            kind: FieldKind::Gaussian(CovarianceModel::SquaredExponential),
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.bin");
        write_field_binary(&field, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[0..4], b"SJLF");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 2);
        assert_eq!(bytes.len(), 16 + 4 * 8);
    }

    #[test]
    fn pgm_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.pgm");
        write_mask_pgm(&[true, false, false, true], 2, 2, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"P5\n2 2\n255\n"));
        assert_eq!(&bytes[bytes.len() - 4..], &[255, 0, 0, 255]);
        assert!(write_mask_pgm(&[true; 3], 2, 2, &path).is_err());
    }
}
