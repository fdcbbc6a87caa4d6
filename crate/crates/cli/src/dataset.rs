//! Dataset discovery and image I/O.
//!
//! A dataset directory holds `<id>_vi.<ext>` / `<id>_ir.<ext>` pairs with
//! `ext` one of png, ppm or bmp. A `manifest.tsv` in the directory (or an
//! explicit manifest path) lists `id<TAB>visible<TAB>infrared` rows instead;
//! relative paths are resolved against the manifest's directory.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use fcdfuse_core::{make_pair, to_gray, Gray8, GrayImage, ImagePair, Rgb8, RgbImage};
use image::{DynamicImage, ImageFormat, ImageReader};
use log::warn;

use crate::error::{CliError, Result};

pub const MANIFEST_NAME: &str = "manifest.tsv";
pub const EXTENSIONS: [&str; 3] = ["png", "ppm", "bmp"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEntry {
    pub id: String,
    pub visible: PathBuf,
    pub infrared: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DatasetManifest {
    pub pairs: Vec<PairEntry>,
    /// Files that looked like half of a pair but had no partner.
    pub orphans: Vec<PathBuf>,
}

impl DatasetManifest {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn validate(&self, origin: &Path) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(CliError::NoPairs(origin.to_path_buf()));
        }
        let mut seen = HashSet::new();
        for p in &self.pairs {
            if !seen.insert(p.id.as_str()) {
                return Err(CliError::DuplicateId(p.id.clone()));
            }
            for f in [&p.visible, &p.infrared] {
                if !f.is_file() {
                    return Err(CliError::io(
                        f,
                        std::io::Error::new(std::io::ErrorKind::NotFound, "listed file does not exist"),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn split_name(path: &Path) -> Option<(String, bool)> {
    let ext = path.extension()?.to_str()?.to_ascii_lowercase();
    if !EXTENSIONS.contains(&ext.as_str()) {
        return None;
    }
    let stem = path.file_stem()?.to_str()?;
    if let Some(id) = stem.strip_suffix("_vi") {
        Some((id.to_string(), true))
    } else {
        stem.strip_suffix("_ir").map(|id| (id.to_string(), false))
    }
}

/// Finds the pairs under `root`, preferring `root/manifest.tsv` when it
/// exists. Pairs are ordered by id unless a manifest fixes the order.
pub fn discover_pairs(root: &Path) -> Result<DatasetManifest> {
    let manifest = root.join(MANIFEST_NAME);
    if manifest.is_file() {
        return load_manifest(&manifest);
    }
    let entries = fs::read_dir(root).map_err(|e| CliError::io(root, e))?;
    let mut halves: BTreeMap<String, (Vec<PathBuf>, Vec<PathBuf>)> = BTreeMap::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(root, e))?.path();
        if !path.is_file() {
            continue;
        }
        if let Some((id, visible)) = split_name(&path) {
            let slot = halves.entry(id).or_default();
            if visible {
                slot.0.push(path);
            } else {
                slot.1.push(path);
            }
        }
    }

    let mut out = DatasetManifest::default();
    for (id, (mut vis, mut ir)) in halves {
        vis.sort();
        ir.sort();
        match (vis.first(), ir.first()) {
            (Some(v), Some(i)) => {
                if vis.len() > 1 || ir.len() > 1 {
                    warn!("pair `{id}` has several candidate files; using {} and {}", v.display(), i.display());
                }
                out.pairs.push(PairEntry {
                    id,
                    visible: v.clone(),
                    infrared: i.clone(),
                });
            }
            _ => {
                for f in vis.into_iter().chain(ir) {
                    warn!("{} has no matching partner; ignored", f.display());
                    out.orphans.push(f);
                }
            }
        }
    }
    out.validate(root)?;
    Ok(out)
}

pub fn load_manifest(path: &Path) -> Result<DatasetManifest> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut out = DatasetManifest::default();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(CliError::Manifest {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("expected 3 tab-separated columns, got {}", cols.len()),
            });
        }
        out.pairs.push(PairEntry {
            id: cols[0].trim().to_string(),
            visible: base.join(cols[1].trim()),
            infrared: base.join(cols[2].trim()),
        });
    }
    out.validate(path)?;
    Ok(out)
}

fn decode(path: &Path) -> Result<DynamicImage> {
    let image_err = |source| CliError::Image {
        path: path.to_path_buf(),
        source,
    };
    ImageReader::open(path)
        .map_err(|e| CliError::io(path, e))?
        .with_guessed_format()
        .map_err(|e| CliError::io(path, e))?
        .decode()
        .map_err(image_err)
}

pub fn load_rgb(path: &Path) -> Result<RgbImage> {
    rgb_from(decode(path)?)
}

/// Loads an infrared image. Single-channel files are used as is; color
/// files are accepted when every pixel is gray and otherwise reduced with
/// BT.601 luma.
pub fn load_infrared(path: &Path) -> Result<GrayImage> {
    let img = decode(path)?;
    if !img.color().has_color() {
        let g = img.into_luma8();
        let (w, h) = (g.width() as usize, g.height() as usize);
        return Ok(GrayImage::from_values(w, h, g.into_raw())?);
    }
    let rgb = rgb_from(img)?;
    if rgb.pixels().iter().all(|p| p.is_gray()) {
        return Ok(rgb.map(|p| Gray8(p.r)));
    }
    warn!("{}: infrared image has color; converting with BT.601 luma", path.display());
    Ok(to_gray(&rgb))
}

fn rgb_from(img: DynamicImage) -> Result<RgbImage> {
    let img = img.into_rgb8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    Ok(RgbImage::new(w, h, img.pixels().map(|p| Rgb8::from(p.0)).collect())?)
}

pub fn load_pair(entry: &PairEntry) -> Result<ImagePair> {
    let visible = load_rgb(&entry.visible)?;
    let infrared = load_infrared(&entry.infrared)?;
    Ok(make_pair(entry.id.clone(), visible, infrared)?)
}

fn to_image_crate(img: &RgbImage) -> image::RgbImage {
    let (w, h) = img.dims();
    let raw = img.pixels().iter().flat_map(|p| p.channels()).collect();
    image::RgbImage::from_raw(w as u32, h as u32, raw).expect("buffer size matches dimensions")
}

/// Writes an 8-bit RGB PNG, creating parent directories.
pub fn save_png(img: &RgbImage, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    to_image_crate(img)
        .save_with_format(path, ImageFormat::Png)
        .map_err(|source| CliError::Image {
            path: path.to_path_buf(),
            source,
        })
}

/// Places images side by side, top-aligned, on a black canvas.
pub fn hstack(images: &[RgbImage]) -> Result<RgbImage> {
    let width = images.iter().map(|i| i.width()).sum::<usize>();
    let height = images.iter().map(|i| i.height()).max().unwrap_or(0);
    let mut offsets = Vec::with_capacity(images.len());
    let mut x0 = 0;
    for img in images {
        offsets.push(x0);
        x0 += img.width();
    }
    Ok(RgbImage::from_fn(width, height, |x, y| {
        let k = offsets.partition_point(|&o| o <= x) - 1;
        let img = &images[k];
        let lx = x - offsets[k];
        if y < img.height() {
            img.get(lx, y)
        } else {
            Rgb8::BLACK
        }
    })?)
}
