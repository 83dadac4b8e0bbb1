# -*- coding: utf-8 -*-
"""
紧集构造实验室配置文件
"""

# 有限域配置
FIELD_CONFIG = {
    'omega_sign': 'minus',            # ω = α^(-(q²+q+1))，使 χ₄(ω) = i；'plus' 为另一约定
    'max_table_entries': 2 ** 28,     # 对数表元素上限 p^(3h)
    'basis': 'power',                 # E 在 F 上的基 {1, α, α²}
}

# 构造配置
CONSTRUCT_CONFIG = {
    'admissible_residues': (5, 9),    # q mod 12
    'a1_log': None,                   # None 表示取离散对数最小的 a₁
}

# 验证配置
VERIFY_CONFIG = {
    'seed': 20240601,
    'exhaustive_max_q': 9,            # q ≤ 9 时全部穷举
    'pencil_sample': 100000,          # 点-平面关联对抽样数
    'pattern_sample': 10000,          # 图样检验抽样直线数
    'spread_samples': 100,            # 随机射影变换下的正则展开数
    'frame_random_vectors': 1000,
    'collinearity_pairs': 10000,
    'davhasse_sample': 200,
    'field_sample_y': 16,             # 对称多项式恒等式中 y 的抽样数
    'group_order_cap': 10 ** 6,
    'chunk_rows': 1024,               # 矩阵分块行数
    'max_witnesses': 20,
}

# 运行配置
RUN_CONFIG = {
    'format_version': '1',
    'threads': None,                  # None 表示使用 os.cpu_count()
    'bench_qs': (17, 29),
}

# 日志配置
LOG_CONFIG = {
    'log_level': 'INFO',
    'log_file': 'logs/tightset_lab.log',
    'log_dir': 'logs',
    'run_log_template': 'tightset_lab_{command}.log',
    'max_file_size': 10 * 1024 * 1024,   # 10MB
    'backup_count': 5,
}

# 数据存储配置
DATA_CONFIG = {
    'artifact_dir': 'data',
    'artifact_name': 'tightsets_q{q}.json',
    'save_tables_csv': True,
}
