fn main() {
    std::process::exit(kcbg::cli::run(std::env::args_os()));
}
