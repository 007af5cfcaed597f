//! A deterministic 256×256 test image standing in for a natural photograph:
//! a smooth two-axis gradient, a bright rectangle with sharp edges, a dark
//! disc, and a high-frequency texture patch.

use std::f64::consts::TAU;

use crate::image::GrayImage;

pub const SIZE: usize = 256;

pub fn test_image() -> GrayImage {
    test_image_sized(SIZE, SIZE)
}

/// The same scene laid out on an arbitrary grid (coordinates scale with the
/// image size).
pub fn test_image_sized(height: usize, width: usize) -> GrayImage {
    let sy = height as f64 / SIZE as f64;
    let sx = width as f64 / SIZE as f64;
    GrayImage::from_fn(height, width, |r, c| {
        let (y, x) = (r as f64 / sy, c as f64 / sx);
        let mut v = 0.15 + 0.45 * x / 255.0 + 0.15 * y / 255.0 + 0.05 * libm::sin(TAU * 1.5 * y / 255.0);
        if (40.0..120.0).contains(&y) && (150.0..230.0).contains(&x) {
            v = 0.92;
        }
        let (dy, dx) = (y - 185.0, x - 185.0);
        if dy * dy + dx * dx < 30.0 * 30.0 {
            v = 0.05;
        }
        if (150.0..230.0).contains(&y) && (20.0..110.0).contains(&x) {
            v = 0.5 + 0.3 * libm::sin(TAU * x / 5.0) * libm::cos(TAU * y / 7.0);
        }
        v.clamp(0.0, 1.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn in_range_and_stable() {
        let img = test_image();
        assert_eq!((img.height(), img.width()), (SIZE, SIZE));
        assert!(img.pixels().iter().all(|v| (0.0..=1.0).contains(v)));
        assert_eq!(img, test_image());
        assert_eq!(img.get(60, 200), 0.92);
        assert_eq!(img.get(185, 185), 0.05);
    }
}
