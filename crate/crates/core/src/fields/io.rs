//! Field snapshot persistence.
//!
//! Binary layout, all little-endian:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "RSPF"
//! 4       4     u32 format version (1)
//! 8       4     u32 field kind (0 scalar, 1 vec3, 2 rs, 3 rs-with-rate, 4 paravector)
//! 12      8     u64 points per axis n
//! 20      8     f64 box length L
//! 28      8     f64 time t
//! 36      4     u32 component count
//! 40      ...   components, each n^3 pairs (re f64, im f64), row-major (x, y, z), z fastest
//! ```
//!
//! RS component order is `c Lambda, E_x, E_y, E_z, B_x, B_y, B_z`, followed
//! for kind 3 by the time derivatives of the same seven.

use std::io::{Read, Write};

use super::grid::{GridSpec, ScalarField, Vec3Field};
use super::rs::{RSField, RsRate};
use super::FieldError;
use crate::algebra::{c, Complex};

pub const MAGIC: &[u8; 4] = b"RSPF";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Scalar = 0,
    Vec3 = 1,
    Rs = 2,
    RsWithRate = 3,
    Paravector = 4,
}

impl FieldKind {
    fn from_u32(v: u32) -> Result<Self, FieldError> {
        Ok(match v {
            0 => FieldKind::Scalar,
            1 => FieldKind::Vec3,
            2 => FieldKind::Rs,
            3 => FieldKind::RsWithRate,
            4 => FieldKind::Paravector,
            _ => return Err(FieldError::Format(format!("unknown field kind {v}"))),
        })
    }

    pub fn components(self) -> usize {
        match self {
            FieldKind::Scalar => 1,
            FieldKind::Vec3 => 3,
            FieldKind::Rs => 7,
            FieldKind::RsWithRate => 14,
            FieldKind::Paravector => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub kind: FieldKind,
    pub grid: GridSpec,
    pub t: f64,
    pub comps: Vec<Vec<Complex>>,
}

impl Snapshot {
    pub fn from_scalar(f: &ScalarField) -> Self {
        Self {
            kind: FieldKind::Scalar,
            grid: f.grid,
            t: f.t,
            comps: vec![f.data.clone()],
        }
    }

    pub fn from_vec3(f: &Vec3Field) -> Self {
        Self {
            kind: FieldKind::Vec3,
            grid: f.grid,
            t: f.t,
            comps: f.comps.to_vec(),
        }
    }

    pub fn from_rs(f: &RSField) -> Self {
        let mut comps = vec![f.scalar.data.clone()];
        comps.extend(f.e.comps.iter().cloned());
        comps.extend(f.b.comps.iter().cloned());
        let kind = if let Some(r) = &f.rate {
            comps.push(r.scalar.data.clone());
            comps.extend(r.e.comps.iter().cloned());
            comps.extend(r.b.comps.iter().cloned());
            FieldKind::RsWithRate
        } else {
            FieldKind::Rs
        };
        Self {
            kind,
            grid: f.grid,
            t: f.t,
            comps,
        }
    }

    pub fn to_rs(&self) -> Result<RSField, FieldError> {
        if !matches!(self.kind, FieldKind::Rs | FieldKind::RsWithRate) {
            return Err(FieldError::Format("snapshot does not hold an RS field".into()));
        }
        let (g, t) = (self.grid, self.t);
        let s = |i: usize| ScalarField {
            grid: g,
            t,
            data: self.comps[i].clone(),
        };
        let v = |i: usize| Vec3Field {
            grid: g,
            t,
            comps: [self.comps[i].clone(), self.comps[i + 1].clone(), self.comps[i + 2].clone()],
        };
        let f = RSField::new(s(0), v(1), v(4))?;
        if self.kind == FieldKind::RsWithRate {
            f.with_rate(RsRate {
                scalar: s(7),
                e: v(8),
                b: v(11),
            })
        } else {
            Ok(f)
        }
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<(), FieldError> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(self.kind as u32).to_le_bytes())?;
        w.write_all(&(self.grid.n as u64).to_le_bytes())?;
        w.write_all(&self.grid.length.to_le_bytes())?;
        w.write_all(&self.t.to_le_bytes())?;
        w.write_all(&(self.comps.len() as u32).to_le_bytes())?;
        let mut buf = Vec::with_capacity(self.grid.len() * 16);
        for comp in &self.comps {
            buf.clear();
            for z in comp {
                buf.extend_from_slice(&z.re.to_le_bytes());
                buf.extend_from_slice(&z.im.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn read<R: Read>(mut r: R) -> Result<Self, FieldError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(FieldError::Format("bad magic".into()));
        }
        let version = read_u32(&mut r)?;
        if version != VERSION {
            return Err(FieldError::Format(format!("unsupported version {version}")));
        }
        let kind = FieldKind::from_u32(read_u32(&mut r)?)?;
        let n = read_u64(&mut r)? as usize;
        let length = read_f64(&mut r)?;
        let t = read_f64(&mut r)?;
        let ncomp = read_u32(&mut r)? as usize;
        if ncomp != kind.components() {
            return Err(FieldError::Format(format!(
                "kind {kind:?} needs {} components, header says {ncomp}",
                kind.components()
            )));
        }
        let grid = GridSpec::new(n, length)?;
        let mut comps = Vec::with_capacity(ncomp);
        let mut buf = vec![0u8; grid.len() * 16];
        for _ in 0..ncomp {
            r.read_exact(&mut buf)?;
            let comp = buf
                .chunks_exact(16)
                .map(|ch| {
                    let re = f64::from_le_bytes(ch[..8].try_into().unwrap());
                    let im = f64::from_le_bytes(ch[8..].try_into().unwrap());
                    c(re, im)
                })
                .collect();
            comps.push(comp);
        }
        if r.read(&mut [0u8; 1])? != 0 {
            return Err(FieldError::Format("trailing bytes after the last component".into()));
        }
        Ok(Self { kind, grid, t, comps })
    }

    /// One row per grid point: indices, position, then `re,im` per component.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), FieldError> {
        write!(w, "ix,iy,iz,x,y,z")?;
        for k in 0..self.comps.len() {
            write!(w, ",c{k}_re,c{k}_im")?;
        }
        writeln!(w)?;
        for i in 0..self.grid.len() {
            let [ix, iy, iz] = self.grid.unflat(i);
            let [x, y, z] = self.grid.position(i);
            write!(w, "{ix},{iy},{iz},{x},{y},{z}")?;
            for comp in &self.comps {
                write!(w, ",{},{}", comp[i].re, comp[i].im)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, FieldError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, FieldError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64, FieldError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout_is_fixed() {
        let g = GridSpec::new(4, 2.5).unwrap();
        let f = ScalarField::from_fn(g, 0.75, |x| c(x[0], x[2]));
        let mut bytes = Vec::new();
        Snapshot::from_scalar(&f).write(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 40 + 64 * 16);
        assert_eq!(&bytes[..4], b"RSPF");
        assert_eq!(u64::from_le_bytes(bytes[12..20].try_into().unwrap()), 4);
        assert_eq!(f64::from_le_bytes(bytes[20..28].try_into().unwrap()), 2.5);
        assert_eq!(f64::from_le_bytes(bytes[28..36].try_into().unwrap()), 0.75);
        // point (0,0,1) sits second: x = 0, z = dx
        let re = f64::from_le_bytes(bytes[56..64].try_into().unwrap());
        let im = f64::from_le_bytes(bytes[64..72].try_into().unwrap());
        assert_eq!((re, im), (0.0, 0.625));
        let back = Snapshot::read(&bytes[..]).unwrap();
        assert_eq!(back, Snapshot::from_scalar(&f));
    }

    #[test]
    fn truncated_or_foreign_input_is_rejected() {
        assert!(Snapshot::read(&b"NOPE"[..]).is_err());
        let g = GridSpec::new(4, 1.0).unwrap();
        let mut bytes = Vec::new();
        Snapshot::from_scalar(&ScalarField::zeros(g, 0.0)).write(&mut bytes).unwrap();
        assert!(Snapshot::read(&bytes[..bytes.len() - 1]).is_err());
        bytes.push(0);
        assert!(Snapshot::read(&bytes[..]).is_err());
    }

    #[test]
    fn csv_has_one_row_per_point() {
        let g = GridSpec::new(4, 1.0).unwrap();
        let mut out = Vec::new();
        Snapshot::from_vec3(&Vec3Field::zeros(g, 0.0)).write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 65);
        assert!(text.starts_with("ix,iy,iz,x,y,z,c0_re,c0_im,c1_re"));
    }
}
