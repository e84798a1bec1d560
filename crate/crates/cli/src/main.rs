fn main() {
    std::process::exit(skdepth_cli::run(std::env::args_os()));
}
