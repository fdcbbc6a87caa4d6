#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use fcdfuse_cli::dataset::save_png;
use fcdfuse_core::{Gray8, GrayImage, Rgb8, RgbImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_rgb(rng: &mut ChaCha8Rng, w: usize, h: usize) -> RgbImage {
    RgbImage::from_fn(w, h, |_, _| Rgb8::new(rng.gen(), rng.gen(), rng.gen())).unwrap()
}

pub fn random_gray(rng: &mut ChaCha8Rng, w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |_, _| Gray8(rng.gen())).unwrap()
}

/// Writes a gray image as an 8-bit single-channel PNG.
pub fn save_gray_png(img: &GrayImage, path: &Path) {
    let (w, h) = img.dims();
    image::GrayImage::from_raw(w as u32, h as u32, img.values().collect())
        .unwrap()
        .save(path)
        .unwrap();
}

/// Binary PPM (P6), written by hand so fixtures do not depend on an encoder.
pub fn save_ppm(img: &RgbImage, path: &Path) {
    let (w, h) = img.dims();
    let mut bytes = format!("P6\n{w} {h}\n255\n").into_bytes();
    bytes.extend(img.pixels().iter().flat_map(|p| p.channels()));
    fs::write(path, bytes).unwrap();
}

/// `n` random pairs named `pair0..` with sizes varying per pair.
pub fn synthetic_dataset(dir: &Path, n: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let (w, h) = (rng.gen_range(24..48), rng.gen_range(16..40));
            let id = format!("pair{i}");
            save_png(&random_rgb(&mut rng, w, h), &dir.join(format!("{id}_vi.png"))).unwrap();
            save_gray_png(&random_gray(&mut rng, w, h), &dir.join(format!("{id}_ir.png")));
            id
        })
        .collect()
}

/// All files under `dir`, relative, sorted.
pub fn tree(dir: &Path) -> Vec<PathBuf> {
    fn walk(root: &Path, dir: &Path, out: &mut Vec<PathBuf>) {
        for e in fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                walk(root, &p, out);
            } else {
                out.push(p.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    let mut out = Vec::new();
    walk(dir, dir, &mut out);
    out.sort();
    out
}

pub fn assert_same_tree(a: &Path, b: &Path) {
    let (ta, tb) = (tree(a), tree(b));
    assert_eq!(ta, tb);
    for f in ta {
        assert_eq!(fs::read(a.join(&f)).unwrap(), fs::read(b.join(&f)).unwrap(), "{}", f.display());
    }
}
