//! Bilinear upscaling of grayscale digit images.

use ndarray::Array2;

/// Upscale with half-pixel-center alignment: output pixel (r, c) samples
/// the source at `(r + 0.5)·Hs/Hd − 0.5` (clamped), interpolating the four
/// neighbors. Constant images map to constant images. Target must be at
/// least as large as the source in both dimensions.
pub fn resize_bilinear(gray: &Array2<f32>, target_h: usize, target_w: usize) -> Array2<f32> {
    let (src_h, src_w) = gray.dim();
    assert!(
        target_h >= src_h && target_w >= src_w,
        "bilinear resize only upscales: {src_h}x{src_w} -> {target_h}x{target_w}"
    );
    if (src_h, src_w) == (target_h, target_w) {
        return gray.clone();
    }

    // per-axis source coordinates and interpolation weights
    let axis = |dst: usize, src: usize| -> Vec<(usize, usize, f32)> {
        let ratio = src as f64 / dst as f64;
        (0..dst)
            .map(|d| {
                let x = ((d as f64 + 0.5) * ratio - 0.5).clamp(0.0, (src - 1) as f64);
                let lo = x.floor() as usize;
                let hi = (lo + 1).min(src - 1);
                (lo, hi, (x - lo as f64) as f32)
            })
            .collect()
    };
    let rows = axis(target_h, src_h);
    let cols = axis(target_w, src_w);

    let mut out = Array2::zeros((target_h, target_w));
    for (r, &(r0, r1, fr)) in rows.iter().enumerate() {
        for (c, &(c0, c1, fc)) in cols.iter().enumerate() {
            let top = gray[[r0, c0]] * (1.0 - fc) + gray[[r0, c1]] * fc;
            let bottom = gray[[r1, c0]] * (1.0 - fc) + gray[[r1, c1]] * fc;
            out[[r, c]] = top * (1.0 - fr) + bottom * fr;
        }
    }
    out
}

/// Convert 8-bit grayscale to f32 without rescaling.
pub fn gray_to_f32(gray: &Array2<u8>) -> Array2<f32> {
    gray.mapv(|v| v as f32)
}
