//! Histogram-based metrics over 256 gray levels: entropy, cross-entropy and
//! mutual information.

use crate::error::Result;
use crate::num::Scalar;
use crate::raster::GrayImage;

pub const BINS: usize = 256;

pub fn histogram(img: &GrayImage) -> [u64; BINS] {
    let mut h = [0u64; BINS];
    for v in img.values() {
        h[v as usize] += 1;
    }
    h
}

fn entropy_of_counts<T: Scalar>(counts: impl Iterator<Item = u64>, total: u64) -> T {
    let n = T::from_u64(total).expect("count fits");
    counts.filter(|&c| c > 0).fold(T::zero(), |acc, c| {
        let p = T::from_u64(c).expect("count fits") / n;
        acc - p * p.log2()
    })
}

/// Shannon entropy in bits (EN). At most 8 for 8-bit images.
pub fn entropy<T: Scalar>(img: &GrayImage) -> T {
    entropy_of_counts(histogram(img).into_iter(), img.len() as u64)
}

/// Relative entropy of `reference` against `fused` in bits. Empty bins of
/// the fused histogram are smoothed to `1 / (2N)`.
pub fn cross_entropy<T: Scalar>(reference: &GrayImage, fused: &GrayImage) -> Result<T> {
    reference.ensure_same_dims(fused)?;
    let n = T::from_usize(reference.len()).expect("count fits");
    let eps = T::one() / (T::lit(2.0) * n);
    let p = histogram(reference);
    let q = histogram(fused);
    Ok(p.iter().zip(q.iter()).filter(|(&pc, _)| pc > 0).fold(T::zero(), |acc, (&pc, &qc)| {
        let pk = T::from_u64(pc).expect("count fits") / n;
        let qk = if qc > 0 {
            T::from_u64(qc).expect("count fits") / n
        } else {
            eps
        };
        acc + pk * (pk / qk).log2()
    }))
}

/// CE of the fused image against both references, averaged.
pub fn fused_cross_entropy<T: Scalar>(visible: &GrayImage, infrared: &GrayImage, fused: &GrayImage) -> Result<T> {
    let a: T = cross_entropy(visible, fused)?;
    let b: T = cross_entropy(infrared, fused)?;
    Ok((a + b) / T::lit(2.0))
}

/// `H(A) + H(B) - H(A, B)` from the 256x256 joint histogram.
pub fn mutual_information_between<T: Scalar>(a: &GrayImage, b: &GrayImage) -> Result<T> {
    a.ensure_same_dims(b)?;
    let mut joint = vec![0u64; BINS * BINS];
    for (x, y) in a.values().zip(b.values()) {
        joint[x as usize * BINS + y as usize] += 1;
    }
    let n = a.len() as u64;
    let ha: T = entropy(a);
    let hb: T = entropy(b);
    let hab: T = entropy_of_counts(joint.into_iter(), n);
    Ok(ha + hb - hab)
}

/// MI of the fused image with each reference, summed.
pub fn fused_mutual_information<T: Scalar>(
    visible: &GrayImage,
    infrared: &GrayImage,
    fused: &GrayImage,
) -> Result<T> {
    let a: T = mutual_information_between(visible, fused)?;
    let b: T = mutual_information_between(infrared, fused)?;
    Ok(a + b)
}
