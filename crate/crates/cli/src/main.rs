fn main() {
    std::process::exit(lpbesov_cli::parse_and_dispatch(std::env::args_os()));
}
