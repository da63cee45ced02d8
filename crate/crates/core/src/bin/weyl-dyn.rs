fn main() {
    std::process::exit(weyl_dyn::cli::run(std::env::args_os()));
}
