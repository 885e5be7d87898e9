use lcpkit::io::{write_bwt, write_sa, LcpWriter, OnDisk};
use lcpkit::{
    build_bwt, build_suffix_array, construct, lcp_bruteforce, lcp_go2, lcp_hybrid_external, load_text, Algo,
    BuildParams, Go2Config, Instruments,
};
use proptest::prelude::*;

fn small_alphabet_text() -> impl Strategy<Value = Vec<u8>> {
    (1u8..=4, 0usize..400).prop_flat_map(|(sigma, n)| proptest::collection::vec(1..=sigma, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn all_paths_agree(raw in small_alphabet_text(), m in 1u8..=254, buf in 4usize..256) {
        let t = load_text(&raw).unwrap();
        let sa = build_suffix_array(&t);
        let b = build_bwt(&t, &sa);
        let truth = lcp_bruteforce(&t, &sa);
        let params = BuildParams { m, queue_buf: buf, tmp_dir: None };
        for algo in Algo::ALL {
            let got = construct(algo, &t, &sa, Some(&b), &params, &mut Instruments::new()).unwrap();
            prop_assert_eq!(&got, &truth, "{}", algo);
        }
    }
}

#[test]
fn streaming_paths_read_from_files() {
    let raw = b"mississippi_missouri_mississippi".repeat(40);
    let t = load_text(&raw).unwrap();
    let sa = build_suffix_array(&t);
    let b = build_bwt(&t, &sa);
    let truth = lcp_bruteforce(&t, &sa);

    let dir = tempfile::tempdir().unwrap();
    let (sa_path, bwt_path) = (dir.path().join("in.sa"), dir.path().join("in.bwt"));
    write_sa(&sa_path, &sa).unwrap();
    write_bwt(&bwt_path, &b).unwrap();
    let src = OnDisk::open(&sa_path, &bwt_path).unwrap();

    let cfg = Go2Config { queue_buf: 32, tmp_dir: Some(dir.path().to_path_buf()) };
    let out_path = dir.path().join("go2.lcp");
    let mut w = LcpWriter::create(&out_path, t.len()).unwrap();
    lcp_go2(&t, &src, &cfg, &mut w, &mut Instruments::new()).unwrap();
    w.finish().unwrap();
    assert_eq!(lcpkit::io::read_lcp(&out_path).unwrap(), truth);

    for m in [1u8, 3, 254] {
        let mut out = Vec::new();
        lcp_hybrid_external(&t, &src, m, dir.path(), &mut out, &mut Instruments::new()).unwrap();
        out.push(-1);
        assert_eq!(out, truth.as_slice(), "m={m}");
    }
}
