use std::fs;

use agfrft::harness::noise::standard_normal;
use agfrft::harness::pipelines::synthetic_image;
use agfrft::harness::{
    add_gaussian_noise, format_g, load_complex_csv, load_edges_csv, load_pgm, load_ply_ascii, load_signal_csv, psnr,
    ssim, write_pgm, ExperimentConfig, Image, Pipeline,
};

#[test]
fn pgm_round_trip_is_exact_on_quantized_images() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("img.pgm");
    let img = synthetic_image::<f64>(13, 7);
    write_pgm(&path, &img, 255).unwrap();
    let back = load_pgm::<f64>(&path).unwrap();
    assert_eq!((back.width, back.height), (13, 7));
    for (a, b) in img.data.iter().zip(&back.data) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn ascii_pgm_with_comments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.pgm");
    fs::write(&path, "P2\n# made by hand\n3 2\n# max\n4\n0 1 2\n3 4 4\n").unwrap();
    let img = load_pgm::<f64>(&path).unwrap();
    assert_eq!(img.data, vec![0.0, 0.25, 0.5, 0.75, 1.0, 1.0]);
}

#[test]
fn text_loaders() {
    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("s.csv");
    fs::write(&sig, "value\n1.5\n-2\n\n3e-1\n").unwrap();
    assert_eq!(load_signal_csv::<f64>(&sig).unwrap(), vec![1.5, -2.0, 0.3]);

    let cx = dir.path().join("c.csv");
    fs::write(&cx, "re,im\n1,2\n-0.5,0\n").unwrap();
    let c = load_complex_csv::<f64>(&cx).unwrap();
    assert_eq!((c[0].re, c[0].im, c[1].re), (1.0, 2.0, -0.5));

    let edges = dir.path().join("e.csv");
    fs::write(&edges, "src,dst,weight\n0,1,2.5\n1,2\n").unwrap();
    let g = load_edges_csv::<f64>(&edges, Some(4)).unwrap();
    assert_eq!((g.n(), g.weight(1, 0), g.weight(2, 1), g.edge_count()), (4, 2.5, 1.0, 2));

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "1\nabc\n").unwrap();
    let msg = load_signal_csv::<f64>(&bad).unwrap_err().to_string();
    assert!(msg.contains(":2"), "{msg}");
}

#[test]
fn ascii_ply_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.ply");
    fs::write(
        &path,
        "ply\nformat ascii 1.0\ncomment x\nelement vertex 2\nproperty float x\nproperty float y\n\
         property float z\nproperty uchar red\nelement face 0\nproperty list uchar int vertex_indices\n\
         end_header\n1 2 3 255\n-1 0.5 0 0\n",
    )
    .unwrap();
    let pts = load_ply_ascii::<f64>(&path).unwrap();
    assert_eq!(pts, vec![[1.0, 2.0, 3.0], [-1.0, 0.5, 0.0]]);
}

#[test]
fn noise_is_seeded_and_scaled() {
    assert_eq!(standard_normal::<f64>(16, 3), standard_normal::<f64>(16, 3));
    assert_ne!(standard_normal::<f64>(16, 3), standard_normal::<f64>(16, 4));
    let x = vec![1.0; 20000];
    let y = add_gaussian_noise(&x, 2.0, 9).unwrap();
    let var = y.iter().map(|v| (v - 1.0) * (v - 1.0)).sum::<f64>() / y.len() as f64;
    assert!((var.sqrt() - 2.0).abs() < 0.05);
    assert_eq!(add_gaussian_noise(&x, 0.0, 9).unwrap(), x);
    assert!(add_gaussian_noise(&x, -1.0, 9).is_err());
}

#[test]
fn metrics() {
    assert!(psnr(0.0f64, 1.0).unwrap().is_infinite());
    assert!((psnr(0.01f64, 1.0).unwrap() - 20.0).abs() < 1e-12);
    assert!((psnr(1.0f64, 255.0).unwrap() - 48.130_803_608_679_1).abs() < 1e-9);
    let img = synthetic_image::<f64>(20, 20);
    assert!((ssim(&img, &img).unwrap() - 1.0).abs() < 1e-12);
    let flat = Image::from_fn(20, 20, |_, _| 0.5);
    assert!(ssim(&img, &flat).unwrap() < 0.9);
}

#[test]
fn format_g_matches_printf() {
    assert_eq!(format_g(0.00280223456), "0.00280223");
    assert_eq!(format_g(25.52549), "25.5255");
    assert_eq!(format_g(1.0), "1");
    assert_eq!(format_g(2.265e-5), "2.265e-05");
    assert_eq!(format_g(f64::INFINITY), "inf");
}

#[test]
fn config_file_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(&path, "# image run\nsigma = 25\nmethods = gfrft,agfrft-ii\nseed = 4\n").unwrap();
    let cfg = ExperimentConfig::<f64>::from_file(&path, Pipeline::Image).unwrap();
    assert_eq!(cfg.sigmas, vec![25.0]);
    assert_eq!(cfg.seed, 4);
    assert_eq!(cfg.kinds.len(), 2);
    fs::write(&path, "nonsense = 1\n").unwrap();
    assert!(ExperimentConfig::<f64>::from_file(&path, Pipeline::Image).is_err());
}
